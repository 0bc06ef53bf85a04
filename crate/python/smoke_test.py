"""Smoke test for the qsurg extension module.

Build and install it first:

    pip install --no-build-isolation ./crates/qsurg-py
"""

import qsurg


def main():
    shor = qsurg.shor()
    assert (shor.n, shor.k) == (9, 1), shor
    assert shor.distance("Z") == 3 and shor.distance("X") == 3
    assert dict(shor.weights())["omega"] == 6

    again = qsurg.Code.from_text(shor.to_text())
    assert again.pz == shor.pz and again.px == shor.px

    u = [1, 0, 0, 1, 0, 0, 1, 0, 0]
    merge = qsurg.external_merge(shor, shor, u, u, "Z", 1)
    merged = merge.merged
    assert (merged.n, merged.k) == (20, 1), merged
    assert len(merge.new_qubits) == 2
    assert merge.coequaliser_is_valid()
    assert "k_after = 1" in merge.report()

    measured = qsurg.measure(shor, u, "Z", 1)
    assert measured.merged.k == 0

    try:
        qsurg.external_merge(shor, shor, [1] * 9, [1] * 9)
    except qsurg.NotIrreducibleError:
        pass
    else:
        raise AssertionError("a reducible logical should be rejected")

    gross = qsurg.bb(12, 6, "x^3+y+y^2", "y^3+x+x^2")
    assert (gross.n, gross.k) == (144, 12)
    assert gross.distance("Z", trials=200, seed=1) == 12

    print("qsurg smoke test passed")


if __name__ == "__main__":
    main()
