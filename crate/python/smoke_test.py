"""Smoke test for the Python bindings.

Build and install first:
    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/wachspress_py-*.whl
"""

import json

import wachspress_py as w


def main():
    sq = w.Polytope([[0, 0], [1, 0], [1, 1], [0, 1]])
    assert sq.dim == 2 and len(sq) == 4
    assert sq.volume() == "1"
    assert w.wachspress_coords(sq, ["1/2", "1/2"]) == ["1/4"] * 4

    pent = w.Polytope.fixture("pentagon")
    assert w.adjoints_agree(pent)
    res = json.loads(w.residual_arrangement(pent))
    assert len(res["components"]) == 5

    adj, den, num = w.segre_expression([[2, 6], [3, 4], [4, 3], [5, 1], [7, 0]])
    assert adj == "1-15t_1-22t_2+71t_1^2+212t_1t_2+95t_2^2-105t_1^3-476t_1^2t_2-511t_1t_2^2-84t_2^3"
    assert den == "X_2(1+2X_1+6X_2)(1+3X_1+4X_2)(1+5X_1+X_2)(1+7X_1)"

    tri = w.Polytope.fixture("triangle")
    assert w.verify_moment_identity(tri, 4)
    assert w.moment(sq, [1, 1]) == "1/4"

    prism = w.Polytope.fixture("pentagonal-prism")
    rep = json.loads(w.invariants3d_report(prism))
    assert rep["invariants"]["wachspress"] == [14, 8]
    assert w.irred_filter([5, 5, 4, 4, 4, 4, 4]) == (True, [])
    assert not w.irred_filter([7, 7, 4, 4, 4, 4, 4, 4, 4])[0]
    assert w.gamma_dimension(w.Polytope.fixture("tetrahedron")) == 34

    back = w.Polytope.from_json(pent.to_json("pentagon"))
    assert back.vertices() == pent.vertices()

    try:
        w.Polytope([[0, 0], [1, 1], [2, 2]])
    except ValueError:
        pass
    else:
        raise AssertionError("collinear points accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
