import random
from itertools import combinations

from weightedhyp.verify import (
    construct_monomial,
    exists_monomial,
    is_good,
    is_quasismooth,
    is_wellformed,
    is_wellformed_ambient,
    stratum_meets_x,
    tangent_monomials,
)
from weightedhyp.weights import make_ws

_P = (1 << 31) - 1


def test_wellformed_ambient_goldens():
    assert is_wellformed_ambient((1, 1, 1))
    assert not is_wellformed_ambient((6, 4, 3))
    assert is_wellformed_ambient((28, 24, 21, 16, 13, 11))


def test_wellformed_hypersurface_goldens():
    assert is_wellformed(make_ws((18, 12, 7, 1), 36))
    assert not is_wellformed(make_ws((260, 121, 52, 52, 36), 520))
    assert not is_wellformed(make_ws((3, 2, 2), 6))


def test_wellformed_permutation_invariant():
    rng = random.Random(3)
    for _ in range(200):
        s = rng.randint(3, 6)
        w = [rng.randint(1, 12) for _ in range(s)]
        d = rng.randint(1, 40)
        ref = is_wellformed(make_ws(w, d))
        rng.shuffle(w)
        assert is_wellformed(make_ws(w, d)) == ref


def test_quasismooth_goldens():
    assert is_quasismooth(make_ws((1,) * 6, 5))
    assert not is_quasismooth(make_ws((12, 8, 5), 24))
    assert is_quasismooth(make_ws((15, 10, 3, 2, 1, 1), 31))


def test_exists_monomial_basic():
    assert exists_monomial((6, 10, 15), 30)
    assert not exists_monomial((6, 10, 15), 29)
    assert exists_monomial((7, 9, 11), 40007)
    assert not exists_monomial((2, 4, 6), 41)
    assert exists_monomial((3,), 9)
    assert not exists_monomial((3,), 10)
    assert exists_monomial((), 0)
    assert not exists_monomial((), 5)


def test_exists_monomial_huge_targets():
    # Forces the residue-graph path (target above the bitset ceiling).
    assert exists_monomial((40009, 40013, 9), 80032)
    assert not exists_monomial((40009, 40013, 9), 40010)


def test_exists_monomial_matches_dp():
    rng = random.Random(13)
    for _ in range(300):
        n = rng.randint(1, 4)
        w = tuple(rng.randint(1, 12) for _ in range(n))
        top = rng.randint(0, 60)
        reach = [True] + [False] * top
        for m in range(1, top + 1):
            reach[m] = any(m >= a and reach[m - a] for a in w)
        for m in range(top + 1):
            assert exists_monomial(w, m) == reach[m]


def test_construct_monomial():
    rng = random.Random(17)
    for _ in range(300):
        n = rng.randint(1, 5)
        w = tuple(rng.randint(1, 9) for _ in range(n))
        t = rng.randint(0, 50)
        vec = construct_monomial(w, t)
        if exists_monomial(w, t):
            assert vec is not None
            assert sum(x * y for x, y in zip(vec, w)) == t
            assert all(x >= 0 for x in vec)
        else:
            assert vec is None


def test_tangent_monomials_goldens():
    ws = make_ws((28, 24, 21, 16, 13, 11), 112)
    # Stratum of y (24) and z (21): witnesses z^4 x and y^4 u.
    wit = set(tangent_monomials(ws, (1, 2)))
    assert wit == {(1, 0, 4, 0, 0, 0), (0, 4, 0, 1, 0, 0)}
    assert tangent_monomials(ws, (0,)) == [(4, 0, 0, 0, 0, 0)]
    assert tangent_monomials(make_ws((12, 8, 5), 24), (2,)) == []


def test_tangent_monomials_agree_with_verdict():
    rng = random.Random(29)
    for _ in range(150):
        s = rng.randint(3, 5)
        w = [rng.randint(1, 10) for _ in range(s)]
        d = rng.randint(1, 40)
        ws = make_ws(w, d)
        ok = all(
            tangent_monomials(ws, sub)
            for size in range(1, s + 1)
            for sub in combinations(range(s), size)
        )
        assert ok == is_quasismooth(ws)


def test_quasismooth_cone_monotone():
    # Appending a unit weight preserves a true verdict.
    rng = random.Random(37)
    found = 0
    while found < 60:
        s = rng.randint(3, 5)
        w = [rng.randint(1, 8) for _ in range(s)]
        d = rng.randint(1, 30)
        ws = make_ws(w, d)
        if not is_quasismooth(ws):
            continue
        found += 1
        assert is_quasismooth(make_ws(w + [1], d))


def _enumerate_monomials(weights, d):
    out = []

    def rec(idx, rem, acc):
        if idx == len(weights):
            if rem == 0:
                out.append(tuple(acc))
            return
        a = weights[idx]
        if idx == len(weights) - 1:
            if rem % a == 0:
                out.append(tuple(acc + [rem // a]))
            return
        for n in range(rem // a + 1):
            rec(idx + 1, rem - n * a, acc + [n])

    rec(0, d, [])
    return out


def _sample_gradient_ok(ws, rng, points_per_stratum):
    """Random members through random stratum points stay smooth there.

    One-sided Jacobian oracle over a large prime field: a quasismooth
    verdict must never meet a vanishing gradient this way.
    """
    a = ws.weights
    d = ws.degree
    s = len(a)
    mons = _enumerate_monomials(a, d)
    for size in range(1, s + 1):
        for subset in combinations(range(s), size):
            inside = set(subset)
            on_stratum = [m for m in mons if all(
                m[i] == 0 for i in range(s) if i not in inside)]
            if len(on_stratum) == 1:
                # F restricted to the open stratum is a single monomial:
                # the cone of the general member misses it entirely.
                continue
            # Monomials whose gradient can survive at stratum points:
            # support inside I except at most a single linear external.
            grad_mons = {}
            for m in mons:
                ext = [i for i in range(s) if m[i] and i not in inside]
                if len(ext) == 0:
                    grad_mons[m] = None
                elif len(ext) == 1 and m[ext[0]] == 1:
                    grad_mons[m] = ext[0]
            for _ in range(points_per_stratum):
                x = [0] * s
                for i in subset:
                    x[i] = rng.randint(1, _P - 1)
                coeff = {m: rng.randint(1, _P - 1) for m in grad_mons}

                def val_inside(m):
                    v = 1
                    for i in subset:
                        if m[i]:
                            v = v * pow(x[i], m[i], _P) % _P
                    return v

                if on_stratum:
                    star = on_stratum[rng.randrange(len(on_stratum))]
                    rest = sum(
                        coeff[m] * val_inside(m)
                        for m in on_stratum
                        if m != star
                    ) % _P
                    coeff[star] = (-rest) * pow(val_inside(star), _P - 2, _P) % _P
                grad = [0] * s
                for m, ext in grad_mons.items():
                    v = coeff[m] * val_inside(m) % _P
                    if ext is not None:
                        grad[ext] = (grad[ext] + v) % _P
                    else:
                        for i in subset:
                            if m[i]:
                                gi = v * m[i] % _P * pow(x[i], _P - 2, _P) % _P
                                grad[i] = (grad[i] + gi) % _P
                if not any(grad):
                    return False
    return True


def test_quasismooth_jacobian_differential():
    rng = random.Random(101)
    checked = 0
    attempts = 0
    while checked < 6 and attempts < 4000:
        attempts += 1
        s = rng.randint(3, 5)
        w = [rng.randint(2, 10) for _ in range(s)]
        d = rng.randint(4, 40)
        ws = make_ws(w, d)
        if not ws.is_nondegenerate or not is_quasismooth(ws):
            continue
        if len(_enumerate_monomials(ws.weights, d)) > 120:
            continue
        checked += 1
        assert _sample_gradient_ok(ws, rng, 200), ws.render()
    assert checked == 6
    # A known smooth one with unit weights for good measure.
    assert _sample_gradient_ok(make_ws((2, 1, 1, 1), 6), rng, 60)


def test_stratum_meets_x():
    ws = make_ws((28, 24, 21, 16, 13, 11), 112)
    assert stratum_meets_x(ws, (0,))  # x^4
    assert not stratum_meets_x(ws, (2,))  # 112 not a multiple of 21


def test_is_good():
    assert is_good(make_ws((15, 10, 3, 2, 1, 1), 31))
    assert not is_good(make_ws((12, 8, 5), 24))
    # Degenerate: degree equal to a weight.
    assert not is_good(make_ws((5, 3, 2, 1), 5))
    # Well-formedness can be waived.
    assert not is_good(make_ws((3, 2, 2), 6))
    assert is_good(make_ws((3, 2, 2), 6), wellformed=False)
