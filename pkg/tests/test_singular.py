import random
from fractions import Fraction
from math import gcd

import pytest

from weightedhyp.singular import (
    ClassificationError,
    classify_quotient,
    has_no_tiger,
    hypersurface_singularities,
    ke_sufficient,
    orbifold_strata,
    reid_tai_ages,
    variety_verdict,
)
from weightedhyp.weights import make_ws


def test_reid_tai_goldens():
    assert classify_quotient(3, (1, 1, 1, 2)) == "terminal"
    assert classify_quotient(3, (1, 1)) == "not-canonical"
    assert classify_quotient(2, (1, 1)) == "canonical"
    assert classify_quotient(1, ()) == "terminal"


def _oracle(r, exps):
    # Exact-rational Reid-Tai over the faithful part of the action.
    g = gcd(r, *exps) if exps else r
    r2 = r // g
    exps = tuple((b // g) % r2 for b in exps) if g > 1 else exps
    if r2 == 1:
        return "terminal"
    if not any(b % r2 for b in exps):
        return "not-canonical"
    ages = [
        sum(Fraction((e * b) % r2, r2) for b in exps) for e in range(1, r2)
    ]
    if min(ages) > 1:
        return "terminal"
    if min(ages) >= 1:
        return "canonical"
    return "not-canonical"


def test_reid_tai_matches_bruteforce():
    rng = random.Random(41)
    for _ in range(400):
        r = rng.randint(2, 200)
        m = rng.randint(1, 5)
        exps = tuple(rng.randint(0, r - 1) for _ in range(m))
        assert classify_quotient(r, exps) == _oracle(r, exps)


def test_reid_tai_normalizes_unfaithful_types():
    assert classify_quotient(4, (2, 2)) == classify_quotient(2, (1, 1))
    assert classify_quotient(6, (2, 4)) == classify_quotient(3, (1, 2))


def test_ages_shape():
    ages = reid_tai_ages(3, (1, 1, 1, 2))
    assert ages == [(1, 5), (2, 7)]


def test_orbifold_strata_goldens():
    strata = dict(orbifold_strata((28, 24, 21, 16, 13, 11)))
    assert strata == {
        (0,): 28, (1,): 24, (2,): 21, (3,): 16, (4,): 13, (5,): 11,
        (1, 3): 8, (0, 2): 7, (1, 2): 3, (0, 1, 3): 4,
    }
    assert orbifold_strata((1, 1, 1, 1, 1, 1)) == []
    strata = dict(orbifold_strata((1, 3, 5, 8, 12)))
    assert strata[(3, 4)] == 4


def _locus_set(ws):
    return {
        (l.type_label(), l.locus_dim, l.count, l.dissident, l.contained)
        for l in hypersurface_singularities(ws)
    }


def test_x112_worked_example():
    ws = make_ws((28, 24, 21, 16, 13, 11), 112)
    assert _locus_set(ws) == {
        ("1/4(1,1,3)", 1, None, False, False),
        ("1/3(1,1,2)", 1, None, False, True),
        ("1/24(4,21,13,11)", 0, 1, True, True),
        ("1/8(4,5,5,3)", 0, 2, True, False),
        ("1/7(3,2,6,4)", 0, 1, False, False),
        ("1/21(3,16,13,11)", 0, 1, False, True),
        ("1/13(2,11,3,11)", 0, 1, False, True),
        ("1/11(6,10,5,2)", 0, 1, False, True),
    }
    assert variety_verdict(ws) == "TE"


def test_singularity_rendering():
    ws = make_ws((28, 24, 21, 16, 13, 11), 112)
    rendered = {l.render() for l in hypersurface_singularities(ws)}
    assert "1/24(4,21,13,11) dim=0 [dissident]" in rendered
    assert "1/8(4,5,5,3) dim=0 x2 [dissident]" in rendered
    assert "1/4(1,1,3) dim=1" in rendered


def test_simple_hypersurface_loci():
    loci = hypersurface_singularities(make_ws((3, 2, 1, 1, 1, 1), 10))
    assert [
        (l.index, tuple(sorted(l.exponents)), l.locus_dim, l.count)
        for l in loci
    ] == [(3, (1, 1, 1, 2), 0, 1)]
    assert variety_verdict(make_ws((3, 2, 1, 1, 1, 1), 10)) == "TE"

    assert hypersurface_singularities(make_ws((5, 2, 1, 1, 1, 1), 10)) == []
    assert variety_verdict(make_ws((5, 2, 1, 1, 1, 1), 10)) == "SM"

    loci = hypersurface_singularities(make_ws((10, 3, 3, 2, 2, 1), 20))
    curves = {
        (l.index, tuple(sorted(l.exponents)), l.locus_dim) for l in loci
    }
    assert (2, (1, 1, 1), 1) in curves
    assert (3, (1, 1, 2), 1) in curves


def test_jk_transverse_type_not_canonical():
    for h in range(3, 9):
        assert classify_quotient(h, (h - 1, 2)) == "not-canonical"


def test_contained_stratum_requires_tangent():
    # A non-quasismooth input where the contained stratum has no tangent
    # monomial must fail loudly instead of emitting a wrong type.
    ws = make_ws((12, 8, 5), 24)
    with pytest.raises(ClassificationError):
        hypersurface_singularities(ws)


def test_tiger_and_ke_goldens():
    assert has_no_tiger(make_ws((28, 24, 21, 16, 13, 11), 112))
    assert not has_no_tiger(make_ws((1,) * 6, 5))
    assert ke_sufficient(make_ws((20, 17, 14, 11, 9, 7), 77))
    assert not ke_sufficient(make_ws((1,) * 6, 5))
    assert ke_sufficient(make_ws((28, 24, 21, 16, 13, 11), 112))


def test_verdict_on_known_surfaces():
    # Du Val surface points are canonical but never terminal: on a
    # surface, terminal means smooth.
    assert variety_verdict(make_ws((1, 1, 1, 1), 2)) == "SM"
    assert variety_verdict(make_ws((2, 1, 1, 1), 3)) == "CA"
    assert variety_verdict(make_ws((2, 2, 1, 1), 4)) == "CA"
    assert variety_verdict(make_ws((3, 2, 2, 1), 6)) == "CA"
