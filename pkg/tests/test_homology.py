"""Homology, chain maps as data, mapping cones, and the long exact sequence.

Betti oracles are frozen from independent classical values: the Hochschild
homology of Q is Q in degree zero only; for the dual numbers it is Q^2, Q,
Q, Q, ...; cyclic homology of Q alternates Q, 0, Q, 0; and a group algebra
over Q has vanishing positive rational group homology for finite groups.
"""

from fractions import Fraction

import pytest

from leibhom.algebra import builtin_algebra
from leibhom.chain_maps import phi, proj_I
from leibhom.complexes import build_complex
from leibhom.homology import (ChainComplex, ChainMapRep, compose_maps,
                              cone_pair_map, exactness_check,
                              identity_chain_map, induced_map,
                              induced_rank_streamed, les_of_cone,
                              mapping_cone, verify_boundary_squares,
                              verify_chain_map)
from leibhom.linalg import SparseMatrix, rank_only


def test_betti_oracles_rationals():
    A = builtin_algebra("rationals")
    chh = build_complex(A, "CHH", 4)
    assert [chh.betti(n) for n in range(4)] == [1, 0, 0, 0]
    clam = build_complex(A, "CLAMBDA", 5)
    assert [clam.betti(n) for n in range(5)] == [1, 0, 1, 0, 1]


def test_betti_oracles_dual():
    A = builtin_algebra("dual")
    chh = build_complex(A, "CHH", 5)
    assert [chh.betti(n) for n in range(5)] == [2, 1, 1, 1, 1]
    clam = build_complex(A, "CLAMBDA", 5)
    assert [clam.betti(n) for n in range(5)] == [2, 0, 2, 0, 2]


def test_betti_oracle_split_und_group():
    # Q x Q is separable: higher Hochschild homology vanishes
    S = builtin_algebra("split:2")
    chh = build_complex(S, "CHH", 4)
    assert [chh.betti(n) for n in range(4)] == [2, 0, 0, 0]
    G = builtin_algebra("cyclic:2")
    chh = build_complex(G, "CHH", 4)
    assert [chh.betti(n) for n in range(4)] == [2, 0, 0, 0]
    bar = build_complex(G, "BAR", 4)
    assert [bar.betti(n) for n in range(4)] == [1, 0, 0, 0]


def test_homology_degree_bounds():
    C = build_complex(builtin_algebra("dual"), "CHH", 3)
    with pytest.raises(ValueError):
        C.homology(3)
    with pytest.raises(ValueError):
        C.homology(-1)


def test_homology_data_representatives_and_coords():
    C = build_complex(builtin_algebra("dual"), "CHH", 3)
    H = C.homology(1)
    assert H.betti == 1
    reps = H.representatives
    assert len(reps) == 1
    d1 = C.boundary(1)
    for rep in reps:
        assert d1.apply(rep) == {}
        assert H.is_cycle_combination(rep)
        assert not H.is_boundary(rep)
        assert any(c != 0 for c in H.class_coords(rep))
    # a boundary has vanishing class coordinates
    d2 = C.boundary(2)
    img = d2.apply({0: Fraction(1), 3: Fraction(2)})
    assert all(c == 0 for c in H.class_coords(img))
    assert H.is_boundary(img)


def test_is_boundary_rejects_non_cycles():
    # degree-1 boundary is ab - ba, nonzero only noncommutatively
    C = build_complex(builtin_algebra("s3"), "CHH", 2)
    H = C.homology(1)
    non_cycle = next({j: Fraction(1)} for j in range(C.dims[1])
                     if C.boundary(1).apply({j: Fraction(1)}) != {})
    assert not H.is_cycle_combination(non_cycle)
    with pytest.raises(ValueError):
        H.is_boundary(non_cycle)


def test_verify_chain_map_accepts_phi_and_rejects_broken():
    A = builtin_algebra("dual")
    cl = build_complex(A, "CL", 4)
    chh = build_complex(A, "CHH", 4)
    ok, wit = verify_chain_map(phi(A, cl, chh), 4)
    assert ok and wit is None
    from leibhom.chain_maps import phi as mk
    broken = mk(A, cl, chh, broken=True)
    ok, wit = verify_chain_map(broken, 4)
    assert not ok
    assert wit is not None and len(wit) == 2


def test_chain_map_shape_checks():
    C = build_complex(builtin_algebra("dual"), "CHH", 2)
    with pytest.raises(ValueError):
        ChainMapRep("BAD", C, C, 0, {1: SparseMatrix(3, 3)})


def test_induced_map_matches_streamed_rank():
    A = builtin_algebra("dual")
    cl = build_complex(A, "CL", 4)
    chh = build_complex(A, "CHH", 4)
    F = phi(A, cl, chh)
    for m in (1, 2, 3):
        direct = rank_only(induced_map(F, m))
        tgt_hom = chh.homology(m - 1)
        d_src = cl.boundary(m)
        fmat = F.maps[m]
        got, completed = induced_rank_streamed(
            cl.dims[m], cl.dims[m - 1],
            lambda j, M=d_src: dict(M.columns[j]),
            lambda j, M=fmat: dict(M.columns[j]),
            tgt_hom)
        assert completed
        assert got == direct


def test_induced_map_requires_verified_chain_map():
    A = builtin_algebra("dual")
    cl = build_complex(A, "CL", 4)
    chh = build_complex(A, "CHH", 4)
    broken = phi(A, cl, chh, broken=True)
    with pytest.raises(ValueError):
        for m in (1, 2, 3):
            induced_map(broken, m)


def test_compose_maps_associates_with_matrices():
    A = builtin_algebra("dual")
    cl = build_complex(A, "CL", 4)
    chh = build_complex(A, "CHH", 4)
    clam = build_complex(A, "CLAMBDA", 4)
    F = phi(A, cl, chh)
    G = proj_I(A, chh, clam)
    GF = compose_maps(G, F)
    assert GF.shift == F.shift + G.shift
    for m in GF.maps:
        n = m - F.shift
        if m in F.maps and n in G.maps:
            assert GF.maps[m] == G.maps[n].matmul(F.maps[m])


def test_identity_cone_is_acyclic():
    C = build_complex(builtin_algebra("dual"), "CHH", 4)
    mc = mapping_cone(identity_chain_map(C))
    ok, wit = verify_boundary_squares(mc.cone)
    assert ok, wit
    assert [mc.cone.betti(n) for n in range(4)] == [0, 0, 0, 0]


def test_mapping_cone_requires_degree_preserving_map():
    A = builtin_algebra("dual")
    cl = build_complex(A, "CL", 4)
    chh = build_complex(A, "CHH", 4)
    with pytest.raises(ValueError):
        mapping_cone(phi(A, cl, chh))  # shift 1


def test_mapping_cone_of_cyclic_projection():
    A = builtin_algebra("dual")
    chh = build_complex(A, "CHH", 4)
    clam = build_complex(A, "CLAMBDA", 4)
    mc = mapping_cone(proj_I(A, chh, clam))
    ok, wit = verify_boundary_squares(mc.cone)
    assert ok, wit
    # cone degree n stacks the target at n on the source at n-1
    for n in range(1, 5):
        assert mc.cone.dims[n] == clam.dims[n] + chh.dims[n - 1]
    ok, _ = verify_chain_map(mc.incl, 3)
    assert ok
    ok, _ = verify_chain_map(mc.proj, 3)
    assert ok


def test_les_of_cone_exact_for_tensor_morphism():
    from leibhom.algebra import builtin_morphism
    from leibhom.chain_maps import morphism_complex_map
    f = builtin_morphism("dual_aug")
    src = build_complex(f.source, "CHH", 5)
    tgt = build_complex(f.target, "CHH", 5)
    F = morphism_complex_map(f, "CHH", src, tgt)
    mc = mapping_cone(F)
    matrices, labels = les_of_cone(mc, 4)
    nodes = exactness_check(matrices)
    assert len(nodes) == len(labels) - 1
    for node in nodes:
        assert node["exact"], node


def test_exactness_check_flags_non_exact():
    # 0 -> Q -id-> Q -0-> Q: fails exactness at the last node
    one = SparseMatrix.identity(1)
    zero = SparseMatrix(1, 1)
    nodes = exactness_check([zero, one, zero, zero])
    assert any(not node["exact"] for node in nodes)


def test_cone_pair_map_is_chain_map():
    from leibhom.algebra import builtin_morphism
    from leibhom.chain_maps import morphism_complex_map
    f = builtin_morphism("dual_aug")
    A, B = f.source, f.target
    chh_a = build_complex(A, "CHH", 4)
    chh_b = build_complex(B, "CHH", 4)
    clam_a = build_complex(A, "CLAMBDA", 4)
    clam_b = build_complex(B, "CLAMBDA", 4)
    Fh = morphism_complex_map(f, "CHH", chh_a, chh_b)
    Fl = morphism_complex_map(f, "CLAMBDA", clam_a, clam_b)
    mch, mcl = mapping_cone(Fh), mapping_cone(Fl)
    IA = proj_I(A, chh_a, clam_a)
    IB = proj_I(B, chh_b, clam_b)
    rel = cone_pair_map(mch, mcl, IA, IB)
    ok, wit = verify_chain_map(rel, 4)
    assert ok, wit


def test_truncate_returns_prefix():
    C = build_complex(builtin_algebra("dual"), "CHH", 4)
    T = C.truncate(2)
    assert T.dims == C.dims[:3]
    assert T.boundary(2) == C.boundary(2)
    with pytest.raises(ValueError):
        C.truncate(9)
