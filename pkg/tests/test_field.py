import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridlocus.errors import CapacityError, DomainError, InvalidParameterError
from gridlocus.field import context_for_n, make_field_context, prime_power, smallest_irreducible

SMALL_N = [3, 5, 7, 9, 11, 13, 25, 27]
CTX = {n: context_for_n(n) for n in SMALL_N}


def naive_mul(ctx, a, b):
    """Schoolbook product of coefficient vectors reduced by the modulus."""
    p, mod, deg = ctx.p, list(ctx.modulus), ctx.degree
    ca, cb = ctx.coeffs(a), ctx.coeffs(b)
    prod = [0] * (2 * deg - 1)
    for i, x in enumerate(ca):
        for j, y in enumerate(cb):
            prod[i + j] = (prod[i + j] + x * y) % p
    for top in range(len(prod) - 1, deg - 1, -1):
        coef = prod[top]
        if coef:
            for i, c in enumerate(mod):
                prod[top - deg + i] = (prod[top - deg + i] - coef * c) % p
    return sum(c * p**i for i, c in enumerate(prod[:deg]))


def elements(ctx):
    return st.integers(min_value=0, max_value=ctx.q - 1)


@pytest.mark.parametrize("n", SMALL_N)
def test_table_multiplication_matches_polynomial_arithmetic(n):
    ctx = CTX[n]
    rng = np.random.default_rng(n)
    for a, b in rng.integers(0, ctx.q, size=(300, 2)):
        assert ctx.mul(int(a), int(b)) == naive_mul(ctx, int(a), int(b))


@pytest.mark.parametrize("n", [3, 5, 9])
def test_field_axioms_exhaustive(n):
    ctx = CTX[n]
    q = ctx.q
    for a in range(1, q):
        assert ctx.mul(a, ctx.inv(a)) == 1
        assert ctx.add(a, ctx.neg(a)) == 0
    for a, b, c in itertools.islice(itertools.product(range(q), repeat=3), 0, None, 7):
        assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))


@given(st.data())
@settings(max_examples=200, deadline=None)
def test_field_properties_random(data):
    ctx = CTX[data.draw(st.sampled_from(SMALL_N))]
    a, b = data.draw(elements(ctx)), data.draw(elements(ctx))
    assert ctx.add(a, b) == ctx.add(b, a)
    assert ctx.mul(a, b) == ctx.mul(b, a)
    assert ctx.sub(ctx.add(a, b), b) == a
    if b:
        assert ctx.mul(ctx.div(a, b), b) == a
    if a:
        assert ctx.omega_pow(ctx.dlog(a)) == a
        assert ctx.pow(a, ctx.q - 1) == 1


@pytest.mark.parametrize("n", SMALL_N)
def test_modulus_is_smallest_irreducible_and_omega_primitive(n):
    ctx = CTX[n]
    p, deg = ctx.p, ctx.degree
    assert ctx.mult_order(ctx.omega) == ctx.q - 1
    # every element before omega in the low-degree-first coefficient order has smaller order
    for cand in sorted(range(1, ctx.q), key=ctx.coeffs):
        if cand == ctx.omega:
            break
        assert ctx.mult_order(cand) < ctx.q - 1
    mod = list(ctx.modulus)
    assert mod[-1] == 1 and len(mod) == deg + 1
    if deg == 2:
        def has_root(f):
            return any(sum(c * pow(x, i, p) for i, c in enumerate(f)) % p == 0 for x in range(p))
        assert not has_root(mod)
        for low in itertools.product(range(p), repeat=2):
            if list(low) + [1] == mod:
                break
            assert low[0] == 0 or has_root(list(low) + [1])


def test_known_modulus_gf9():
    assert smallest_irreducible(3, 2) == (1, 0, 1)  # x^2 + 1 over F_3


@pytest.mark.parametrize("n", SMALL_N)
def test_R_subgroup(n):
    ctx = CTX[n]
    R = set(ctx.R_elements())
    assert len(R) == 2 * (n - 1)
    assert ctx.neg(1) in R
    assert all(ctx.mul(a, b) in R for a in R for b in R)
    assert {a for a in range(1, ctx.q) if ctx.in_R(a)} == R


@pytest.mark.parametrize("n", SMALL_N)
def test_even_odd_split(n):
    ctx = CTX[n]
    w_r = ctx.omega_pow(ctx.r)
    for a in range(ctx.q):
        ev, odd = ctx.even_odd_split(a)
        assert ctx.add(ev, odd) == a
        assert ctx.in_Fn(ev)
        assert odd == 0 or ctx.in_Fn(ctx.div(odd, w_r))
        if ev and odd:
            ratio = ctx.div(ev, odd)
            assert ctx.in_Fn(ctx.mul(ratio, w_r))


@given(st.data())
@settings(max_examples=300, deadline=None)
def test_even_odd_split_is_additive(data):
    ctx = CTX[data.draw(st.sampled_from(SMALL_N))]
    a, b = data.draw(elements(ctx)), data.draw(elements(ctx))
    sa, sb, s = ctx.even_odd_split(a), ctx.even_odd_split(b), ctx.even_odd_split(ctx.add(a, b))
    assert s.ev == ctx.add(sa.ev, sb.ev)
    assert s.odd == ctx.add(sa.odd, sb.odd)


def test_Fn_has_n_elements():
    for n in SMALL_N:
        ctx = CTX[n]
        assert int(ctx.fn_member.sum()) == n


def test_vectorised_ops_match_scalar():
    ctx = CTX[25]
    rng = np.random.default_rng(1)
    a = rng.integers(0, ctx.q, 500)
    b = rng.integers(0, ctx.q, 500)
    for vec, sca in ((ctx.vadd, ctx.add), (ctx.vsub, ctx.sub), (ctx.vmul, ctx.mul)):
        out = vec(a, b)
        assert all(int(o) == sca(int(x), int(y)) for o, x, y in zip(out, a, b))


def test_determinism():
    a, b = make_field_context(7), make_field_context(7)
    assert a.modulus == b.modulus and a.omega == b.omega
    assert (a.exp == b.exp).all()


def test_errors():
    with pytest.raises(InvalidParameterError):
        context_for_n(4)
    with pytest.raises(InvalidParameterError):
        context_for_n(6)
    with pytest.raises(InvalidParameterError):
        make_field_context(9)
    with pytest.raises(CapacityError):
        context_for_n(257)
    with pytest.raises(DomainError):
        CTX[3].inv(0)
    with pytest.raises(DomainError):
        CTX[3].dlog(0)


def test_prime_power():
    assert prime_power(27) == (3, 3)
    assert prime_power(125) == (5, 3)
    assert prime_power(12) is None
    assert prime_power(1) is None
