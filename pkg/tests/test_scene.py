import json

import pytest

from steinsym import geometry as geo
from steinsym.errors import InputError
from steinsym.scene import Scene, corpus_scene, dump_scene, load_corpus, load_scene, scene_from_json, set_from_json, set_to_json

SETS = [
    geo.Polygon((0j, 1 + 0j, 1 + 1j)),
    geo.Disk(1 + 2j, 0.5),
    geo.Circle(0j, 2.0),
    geo.Segment(-1j, 3 + 0j),
    geo.ConnectedUnion((geo.Disk(0j, 1.0), geo.Segment(1 + 0j, 4 + 0j))),
]


@pytest.mark.parametrize("s", SETS, ids=lambda s: type(s).__name__)
def test_set_round_trip(s):
    assert set_from_json(json.loads(json.dumps(set_to_json(s)))) == s


def test_scene_round_trip(tmp_path):
    scene = Scene("demo", SETS[4], inner=SETS[1], corollary1={"w0": 0.5 + 0j, "phi": 0.25}, description="x")
    path = tmp_path / "demo.json"
    path.write_text(dump_scene(scene))
    assert load_scene(path) == scene


def test_corpus_contents():
    scenes = load_corpus()
    assert [s.name for s in scenes][:2] == ["segment_000", "segment_030"]
    assert len(scenes) == 12
    for s in scenes:
        geo.validate(s.set)
    assert corpus_scene("square").inner is not None
    with pytest.raises(KeyError):
        corpus_scene("nope")


@pytest.mark.parametrize(
    "obj",
    [
        {"set": {"type": "blob"}},
        {"set": {"type": "disk", "center": [0, 0]}},
        {"set": {"type": "disk", "center": [0], "radius": 1}},
        {"set": {"type": "disk", "center": [0, 0], "radius": "big"}},
        {"shape": {}},
        [],
    ],
)
def test_malformed_scenes(obj):
    with pytest.raises(InputError):
        scene_from_json(obj)


def test_load_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError):
        load_scene(bad)
    with pytest.raises(InputError):
        load_scene(tmp_path / "missing.json")


def test_name_defaults_to_file_stem(tmp_path):
    path = tmp_path / "unnamed.json"
    path.write_text(json.dumps({"set": set_to_json(SETS[1])}))
    assert load_scene(path).name == "unnamed"
