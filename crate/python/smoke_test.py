"""Smoke test for the hyperturan Python extension.

Build and install with:  pip install -e crates/python --no-build-isolation
"""

import json

import hyperturan as ht


def main():
    # isomorphic relabelings share a key
    a = ht.canonical_key(6, [(0, 1, 2), (2, 3, 4)])
    b = ht.canonical_key(6, [(5, 4, 3), (3, 1, 0)])
    assert a == b, (a, b)

    comet = ht.build("Co", 9)
    assert len(comet) == 4 + 10
    assert ht.find(9, comet, "P") is None
    assert ht.find(9, comet, "P2") is not None

    cert = json.loads(ht.turan(7, ["P"], order=2))
    assert cert["verdict"]["value"] == 15, cert["verdict"]
    assert cert["status"] == "search-verified"
    assert ht.verify_certificate(json.dumps(cert)) == []

    assert ht.arrows("K8", 2) is True
    assert ht.arrows("K7", 2) is False
    assert ht.arrows("K13-2e-3", 7) is True

    r9 = json.loads(ht.ramsey(9))
    assert r9["verdict"]["value"] == 15
    assert ht.verify_certificate(ht.ramsey(9)) == []

    assert ht.bipartite_check() == (36, 462, False)
    assert ht.registry_value("ex^(3)(12;P)") == (32, "paper-asserted")

    audit = json.loads(ht.audit([9, 12], samples=50, seed=3))
    assert audit["verdict"]["violations"] == 0

    print("hyperturan", ht.__version__, "smoke test ok")


if __name__ == "__main__":
    main()
