import itertools
import random

import pytest

from reesseq.families import corpus
from reesseq.groebner import (buchberger, divide, ideal_equal, membership, syzygies)
from reesseq.polyring import MonomialOrder, Ring, RingError, mono_lcm


@pytest.fixture
def R():
    return Ring(["x1", "x2", "x3"])


def spoly(f, g, order):
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    l = mono_lcm(lf, lg)
    uf = tuple(a - b for a, b in zip(l, lf))
    ug = tuple(a - b for a, b in zip(l, lg))
    return (f.mul_monomial(uf).scale(1 / f.leading_coefficient(order))
            - g.mul_monomial(ug).scale(1 / g.leading_coefficient(order)))


def assert_groebner(G):
    polys = G.polys
    order = G.order
    for f, g in itertools.combinations(polys, 2):
        assert not divide(spoly(f, g, order), polys, order)[1]
    lms = [p.leading_monomial(order) for p in polys]
    for i, p in enumerate(polys):
        assert p.leading_coefficient(order) == 1
        for j, lm in enumerate(lms):
            if i != j:
                assert not any(all(a <= b for a, b in zip(lm, m)) for m in p.terms)
    keys = [order.key(m) for m in lms]
    assert keys == sorted(keys, reverse=True)


def test_divide_examples(R):
    x1, x2, x3 = R.gens()
    q, r = divide(x1 ** 2 * x3, [x1 * x2])
    assert not q[0] and r == x1 ** 2 * x3
    q, r = divide(x1 * x2 * x2 * x3, [x1 * x2])
    assert not r and q[0] == x2 * x3
    f = x1 ** 2 * x2 + x1 * x2 ** 2
    g = x1 * x2 - x2 ** 2
    q, r = divide(f, [g])
    assert r == 2 * x2 ** 3
    assert q[0] * g + r == f


def test_divide_first_divisor_wins(R):
    x1, x2, _ = R.gens()
    q, r = divide(x1 * x2, [x1, x2])
    assert q[0] == x2 and not q[1] and not r


def test_divide_errors(R):
    x1 = R.var(0)
    with pytest.raises(ValueError):
        divide(x1, [R.zero()])
    with pytest.raises(RingError):
        divide(x1, [Ring(["a"]).var(0)])


def test_buchberger_examples(R):
    x1, x2, x3 = R.gens()
    assert buchberger([x1 * x2, x2 * x3]).polys == [x1 * x2, x2 * x3]
    S = Ring(["x1", "x2"])
    a, b = S.gens()
    G = buchberger([a ** 2, b ** 2, a * b])
    assert set(G.polys) == {a ** 2, b ** 2, a * b}


def test_twisted_cubic_lex():
    T = Ring(["x", "y", "z"])
    x, y, z = T.gens()
    G = buchberger([y - x ** 2, z - x ** 3], MonomialOrder("lex", 3))
    assert_groebner(G)
    assert G.contains(y ** 3 - z ** 2)
    # parametrization x -> t, y -> t^2, z -> t^3 kills every element
    P = Ring(["t"])
    t = P.var(0)
    for g in G.polys:
        assert not g.substitute([t, t ** 2, t ** 3])
    assert y ** 3 - z ** 2 in G.polys or any(
        p.leading_monomial(G.order) == (0, 3, 0) for p in G.polys)


def test_membership(R):
    x1, x2, x3 = R.gens()
    G = buchberger([x2 * x3, x1 * x3, x1 * x2])
    assert membership(x1 ** 2 * x3, G)
    assert not membership(x1, buchberger([x1 * x2]))
    assert membership(R.zero(), G)


def test_ideal_equal(R):
    x1, x2, x3 = R.gens()
    assert ideal_equal([x1, x2], [x1 + x2, x2])
    assert not ideal_equal([x2 * x3, x1 * x3 + x1 * x2], [x2 * x3, x1 * x3, x1 * x2])
    assert ideal_equal([R.zero()], [])


def random_gens(rng, S, homogeneous):
    gens = []
    for _ in range(rng.randint(1, 3)):
        f = S.zero()
        d = rng.randint(1, 3)
        for _ in range(3):
            if homogeneous:
                e = [0, 0, 0]
                for _ in range(d):
                    e[rng.randrange(3)] += 1
            else:
                e = [rng.randint(0, 1) for _ in range(3)]
            f = f + S.monomial(e, rng.randint(-3, 3))
        gens.append(f)
    return gens


@pytest.mark.parametrize("homogeneous", [True, False])
def test_random_bases_are_groebner(homogeneous):
    rng = random.Random(5)
    S = Ring(["a", "b", "c"])
    for _ in range(25):
        gens = random_gens(rng, S, homogeneous)
        for tag in ("grevlex", "lex"):
            G = buchberger([g for g in gens if g] or [S.zero()], MonomialOrder(tag, 3), ring=S)
            if len(G) <= 12:
                assert_groebner(G)
            for g in gens:
                assert G.contains(g)


def test_canonical_under_permutation():
    rng = random.Random(11)
    for entry in corpus():
        if entry.skip:
            continue
        doc = entry.document()
        gens = doc.statements[0].polys + list(doc.ring.relations)
        G = buchberger(gens)
        for _ in range(3):
            perm = gens[:]
            rng.shuffle(perm)
            assert buchberger(perm) == G


def test_syzygies_examples(R):
    x1, x2, x3 = R.gens()
    Z = syzygies([x1, x2])
    assert Z.check() and len(Z) == 1
    v = Z.vectors[0]
    assert v[0] * x1 + v[1] * x2 == R.zero()
    assert {v[0], -v[0]} == {x2, -x2}
    assert len(syzygies([x1 * x2 + x3 ** 2])) == 0


def test_cycle_syzygies():
    from reesseq.families import cycle_path_ideal
    m = cycle_path_ideal(5, 3)
    Z = syzygies(m)
    assert Z.check()
    assert len(Z) == 5
    ring = m[0].ring
    x = ring.gens()
    # m_i = x_i x_{i+1} x_{i+2}, so x_{i+3} e_i - x_i e_{i+1} is a linear syzygy
    for i in range(5):
        col = [ring.zero()] * 5
        col[i] = x[(i + 3) % 5]
        col[(i + 1) % 5] = -x[i]
        assert sum((a * g for a, g in zip(col, m)), ring.zero()) == ring.zero()
        assert Z.contains(col)
    for v in Z.vectors:
        assert all(p.total_degree() == 1 for p in v if p)
