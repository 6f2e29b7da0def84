"""Smoke test for the `esr` extension module.

Build and install first, e.g.
    maturin build --release -m crates/py/Cargo.toml && pip install target/wheels/esr-*.whl
then run `python3 python/smoke_test.py`.
"""

import json

import esr


def main():
    assert "oct3" in esr.catalog_names()

    k, g = esr.catalog_entry("c9")
    assert k.h_vector() == [1, 7, 1]
    assert g.validate(k)["free"]
    assert esr.artinian(k, g, 0) == [[1, 0, 0], [1, 3, 3], [1, 0, 0]]

    oct_k, oct_g = esr.catalog_entry("oct3")
    assert esr.artinian(oct_k, oct_g, 1) == [[1, 0], [3, 0], [3, 0], [1, 0]]
    lsop = esr.build_lsop(oct_k, oct_g, 1, seed=3)
    assert esr.artinian(oct_k, oct_g, 1, lsop=lsop) == esr.artinian(oct_k, oct_g, 1, seed=3)

    # refined Hochster at one grid point: characters are inverted
    lhs = esr.local_cohomology(oct_k, oct_g, 3, 1)
    rhs = esr.hochster_rhs(oct_k, oct_g, 3, 1)
    assert lhs == [rhs[(-c) % 2] for c in range(2)]

    _, quotient, socle = esr.sigma(k, g, 0)
    assert quotient[-1] == [1, 0, 0] and socle == 0

    hollow = esr.Complex(3, [[1, 2], [2, 3], [1, 3]])
    assert hollow.classify()["homology_manifold"]
    try:
        esr.Action(3, [1, 2, 3])
    except ValueError as err:
        assert str(err).startswith("WRONG_ORDER")
    else:
        raise AssertionError("identity accepted without the trivial flag")

    report, failures = esr.verify("misc")
    assert failures == 0 and json.loads(report)["suite"] == "misc"
    print("smoke test passed")


if __name__ == "__main__":
    main()
