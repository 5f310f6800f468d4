import json

import numpy as np
import pytest

from genanim import (
    Raster,
    SceneDocument,
    SceneError,
    SceneObject,
    TransformMatrix,
    find_objects_by_name,
    load_scene,
    save_scene,
)
from genanim.scene import name_match_score

from conftest import fixture_path


def _tiny_scene(tmp_path, objects, canvas=(32, 24)):
    art = np.zeros((canvas[1], canvas[0], 4), np.uint8)
    art[:, :, 3] = 255
    from genanim.pngio import encode_png

    (tmp_path / "art.png").write_bytes(encode_png(art))
    payload = {
        "canvas": {"width": canvas[0], "height": canvas[1]},
        "artwork": "art.png",
        "objects": objects,
    }
    path = tmp_path / "scene.json"
    path.write_text(json.dumps(payload))
    return str(path)


IDENTITY = [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]


def test_load_single_object_identity(tmp_path):
    path = _tiny_scene(tmp_path, [{
        "id": "m", "name": "Mario", "bounds": [1, 1, 5, 5], "anchor": [3, 3],
        "z_order": 1, "transform": IDENTITY,
    }])
    doc = load_scene(path)
    assert len(doc.objects) == 1
    assert doc.objects[0].transform.is_identity
    assert doc.objects[0].transform == TransformMatrix.identity()


def test_duplicate_z_order_names_both_ids(tmp_path):
    path = _tiny_scene(tmp_path, [
        {"id": "a", "name": "A", "bounds": [0, 0, 4, 4], "anchor": [1, 1],
         "z_order": 3, "transform": IDENTITY},
        {"id": "b", "name": "B", "bounds": [5, 5, 4, 4], "anchor": [6, 6],
         "z_order": 3, "transform": IDENTITY},
    ])
    with pytest.raises(SceneError) as err:
        load_scene(path)
    assert "'a'" in str(err.value) and "'b'" in str(err.value)


def test_mario_fixture_matches_json_fields(mario_scene):
    raw = json.load(open(fixture_path("mario_hills.scene.json")))
    assert (mario_scene.canvas_width, mario_scene.canvas_height) == (1024, 768)
    assert len(mario_scene.objects) == 2
    for obj, entry in zip(mario_scene.objects, raw["objects"]):
        assert obj.id == entry["id"]
        assert obj.name == entry["name"]
        assert list(obj.bounds) == [float(v) for v in entry["bounds"]]
        assert list(obj.anchor) == [float(v) for v in entry["anchor"]]
        assert obj.z_order == entry["z_order"]
        assert obj.transform.to_column_major() == pytest.approx(entry["transform"])
        assert list(obj.tags) == entry.get("tags", [])
    assert mario_scene.artwork.width == 1024
    assert mario_scene.artwork.height == 768


def test_missing_file_and_schema_errors(tmp_path):
    with pytest.raises(SceneError, match="not found"):
        load_scene(tmp_path / "nope.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SceneError, match="JSON"):
        load_scene(bad)
    path = _tiny_scene(tmp_path, [{
        "id": "a", "name": "A", "bounds": [0, 0, 4, 4], "anchor": [1, 1],
        "z_order": 1, "transform": IDENTITY, "wat": 1,
    }])
    with pytest.raises(SceneError, match=r"objects\[0\].wat"):
        load_scene(path)


def test_anchor_outside_bounds_rejected():
    with pytest.raises(SceneError, match="anchor"):
        SceneObject(id="x", name="x", bounds=(0, 0, 4, 4), anchor=(9, 9),
                    z_order=0, transform=TransformMatrix.identity())


def test_degenerate_bounds_rejected():
    with pytest.raises(SceneError, match="bounds"):
        SceneObject(id="x", name="x", bounds=(0, 0, 0, 4), anchor=(0, 0),
                    z_order=0, transform=TransformMatrix.identity())


def test_singular_transform_rejected():
    with pytest.raises(SceneError, match="singular"):
        TransformMatrix(np.zeros((4, 4)))


def test_save_load_round_trip(mario_scene, tmp_path):
    out = tmp_path / "copy.scene.json"
    save_scene(mario_scene, out)
    again = load_scene(out)
    assert again.canvas_width == mario_scene.canvas_width
    assert again.canvas_height == mario_scene.canvas_height
    assert again.artwork == mario_scene.artwork
    assert len(again.objects) == len(mario_scene.objects)
    for a, b in zip(again.objects, mario_scene.objects):
        assert (a.id, a.name, a.bounds, a.anchor, a.z_order, a.tags) == \
            (b.id, b.name, b.bounds, b.anchor, b.z_order, b.tags)
        assert a.transform == b.transform


def test_find_exact_match(mario_scene):
    assert [o.name for o in find_objects_by_name(mario_scene, "Mario")] == ["Mario"]


def test_find_token_similarity_hand_oracle(mario_scene):
    # per the scoring rule: "hilly" vs "hills" has Levenshtein distance 1,
    # similarity 0.8, mapping into the similarity band at 0.65
    assert name_match_score("hilly path", "hills") == pytest.approx(0.65)
    assert [o.name for o in find_objects_by_name(mario_scene, "hilly path")] == ["hills"]


def test_find_no_match(mario_scene):
    assert find_objects_by_name(mario_scene, "zebra") == []


def test_find_empty_query_rejected(mario_scene):
    with pytest.raises(SceneError):
        find_objects_by_name(mario_scene, "   ")


def test_ranking_is_total_order(two_paths_scene):
    # equal-score candidates are ordered by ascending id, deterministically
    first = find_objects_by_name(two_paths_scene, "path")
    second = find_objects_by_name(two_paths_scene, "path")
    assert [o.id for o in first] == [o.id for o in second] == ["lower", "upper"]


def test_raster_invariants():
    with pytest.raises(SceneError):
        Raster(np.zeros((4, 4, 2), np.uint8))  # 2 channels unsupported
    r = Raster(np.zeros((4, 5, 4), np.uint8))
    assert (r.width, r.height, r.channels) == (5, 4, 4)
