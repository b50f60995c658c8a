"""Instance construction, generation, and file round-trips."""
import numpy as np
import pytest

from gastsp import ParseError, TspInstance, from_json, generate_random, parse_tsplib, to_json, to_tsplib


def test_valid_instance_freezes_matrix():
    inst = generate_random(5, seed=1)
    assert inst.num_vars == 25
    assert inst.dist.flags.writeable is False
    with pytest.raises(ValueError):
        inst.dist[0, 1] = 99.0


@pytest.mark.parametrize(
    "mutate,msg",
    [
        (lambda d: np.fill_diagonal(d, 1.0), "diagonal"),
        (lambda d: d.__setitem__((0, 1), -2.0), "negative"),
        (lambda d: d.__setitem__((0, 1), np.inf), "finite"),
        (lambda d: d.__setitem__((0, 1), d[1, 0] + 1.0), "symmetric"),
    ],
)
def test_invalid_matrices_rejected(mutate, msg):
    d = np.asarray(generate_random(4, seed=0).dist).copy()
    mutate(d)
    with pytest.raises(ValueError, match=msg):
        TspInstance(n=4, dist=d)


def test_too_small_and_wrong_shape():
    with pytest.raises(ValueError):
        TspInstance(n=2, dist=np.zeros((2, 2)))
    with pytest.raises(ValueError, match="shape"):
        TspInstance(n=4, dist=np.zeros((3, 3)))


def test_generation_is_seed_deterministic():
    a = generate_random(7, seed=42)
    b = generate_random(7, seed=42)
    c = generate_random(7, seed=43)
    assert np.array_equal(a.dist, b.dist)
    assert not np.array_equal(a.dist, c.dist)
    assert a.seed == 42 and a.name == "rand-n07-seed42"


def test_generation_weight_range():
    inst = generate_random(6, seed=3, weight_range=(10.0, 20.0))
    off = inst.dist[~np.eye(6, dtype=bool)]
    assert off.min() >= 10.0 and off.max() <= 20.0
    flat = generate_random(5, seed=0, weight_range=(3.0, 3.0))
    assert np.all(flat.dist[~np.eye(5, dtype=bool)] == 3.0)
    with pytest.raises(ValueError):
        generate_random(5, seed=0, weight_range=(5.0, 2.0))
    with pytest.raises(ValueError):
        generate_random(5, seed=0, weight_range=(-1.0, 2.0))


def test_json_round_trip_is_lossless():
    for seed in range(5):
        inst = generate_random(6, seed=seed)
        back = from_json(to_json(inst))
        assert back == inst
        # serialization itself must be stable too
        assert to_json(back) == to_json(inst)


def test_json_errors():
    with pytest.raises(ParseError, match="invalid JSON"):
        from_json("{nope")
    with pytest.raises(ParseError, match="missing 'dist'"):
        from_json('{"name": "x", "n": 3}')
    with pytest.raises(ParseError):
        from_json('[1, 2]')


def test_tsplib_round_trip():
    inst = generate_random(5, seed=11)
    back = parse_tsplib(to_tsplib(inst))
    assert back.n == inst.n and back.name == inst.name and back.seed == inst.seed
    assert np.array_equal(back.dist, inst.dist)


def test_tsplib_euc2d_rounds_to_nearest_int():
    text = "\n".join(
        [
            "NAME: tri",
            "TYPE: TSP",
            "DIMENSION: 3",
            "EDGE_WEIGHT_TYPE: EUC_2D",
            "NODE_COORD_SECTION",
            "1 0.0 0.0",
            "2 3.0 4.0",
            "3 0.0 1.4",
            "EOF",
        ]
    )
    inst = parse_tsplib(text)
    assert inst.dist[0, 1] == 5.0
    assert inst.dist[0, 2] == 1.0  # 1.4 rounds down via int(x + 0.5)


def test_tsplib_upper_row():
    text = "\n".join(
        [
            "NAME: ur",
            "TYPE: TSP",
            "DIMENSION: 3",
            "EDGE_WEIGHT_TYPE: EXPLICIT",
            "EDGE_WEIGHT_FORMAT: UPPER_ROW",
            "EDGE_WEIGHT_SECTION",
            "1 2 3",
            "EOF",
        ]
    )
    inst = parse_tsplib(text)
    assert inst.dist[0, 1] == 1.0 and inst.dist[0, 2] == 2.0 and inst.dist[1, 2] == 3.0


def test_tsplib_errors_name_the_line():
    with pytest.raises(ParseError, match="line 2"):
        parse_tsplib("NAME: x\nBOGUS_KEY: 1\nDIMENSION: 3\n")
    with pytest.raises(ParseError, match="not symmetric"):
        parse_tsplib(
            "DIMENSION: 3\nTYPE: TSP\nEDGE_WEIGHT_TYPE: EXPLICIT\n"
            "EDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n"
            "0 1 2 9 0 3 2 3 0\nEOF\n"
        )
    with pytest.raises(ParseError, match="EDGE_WEIGHT_TYPE"):
        parse_tsplib("DIMENSION: 3\nTYPE: TSP\nEDGE_WEIGHT_TYPE: GEO\nEOF\n")
