import cmath
import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nag.concrete import SignedPartialPerm, enumerate_partial_perms
from nag.errors import PreconditionError
from nag.numtheory import mobius, totient
from nag.witt import (
    ONE,
    Supernatural,
    WittElement,
    class_of,
    cycle_class,
    frobenius,
    frobenius_adjoint,
    frobenius_by_roots,
    hermitian_form,
    lambda_op,
    phi,
    ramanujan_sum,
    ramanujan_sum_oracle,
    signed_cycle_type,
    trace,
    trace_tm,
    witt_mul,
)

elements = st.dictionaries(st.integers(1, 12), st.integers(-3, 3), max_size=4).map(WittElement)
effective = st.dictionaries(st.integers(1, 8), st.integers(0, 2), max_size=3).map(WittElement)


def float_ramanujan(n, m):
    return sum(cmath.exp(2j * math.pi * k * m / n) for k in range(1, n + 1) if math.gcd(k, n) == 1)


def ghost(f: WittElement, upto: int):
    return [trace_tm(m, f) for m in range(1, upto + 1)]


def ghost_bound(*fs):
    L = 1
    for f in fs:
        for n in f.support:
            L = math.lcm(L, n)
    return L


# Ramanujan sums


@pytest.mark.parametrize("n, m, c", [(1, 0, 1), (1, 5, 1), (2, 1, -1), (4, 2, -2), (6, 3, -2), (6, 1, 1), (12, 0, 4), (9, 3, -3)])
def test_ramanujan_values(n, m, c):
    assert ramanujan_sum(n, m) == c
    assert ramanujan_sum_oracle(n, m) == c


def test_ramanujan_matches_float_root_sum():
    for n in range(1, 41):
        for m in range(0, 41):
            z = float_ramanujan(n, m)
            assert abs(z.imag) < 1e-9
            assert ramanujan_sum(n, m) == round(z.real)


def test_ramanujan_preconditions():
    with pytest.raises(PreconditionError):
        ramanujan_sum(0, 1)
    with pytest.raises(PreconditionError):
        ramanujan_sum(3, -1)


# elements and parsing


def test_parse_and_format():
    f = WittElement.parse("2*phi(1) - phi(4) + 3*phi(6)")
    assert f == WittElement({1: 2, 4: -1, 6: 3})
    assert WittElement.parse(str(f)) == f
    assert str(WittElement()) == "0"
    assert WittElement.parse("0") == WittElement()
    with pytest.raises(PreconditionError):
        WittElement.parse("phi(0)")


@given(elements)
def test_round_trip(f):
    assert WittElement.parse(str(f)) == f


def test_rank_and_conjugate():
    f = WittElement({1: 2, 5: 1})
    assert f.rank() == 2 + 4
    assert f.conjugate() == f


# multiplication


def test_phi_products_by_hand():
    # primitive 4th roots {i, -i}: products i*i=-1, i*-i=1 (twice), -i*-i=-1
    assert phi(4) * phi(4) == WittElement({1: 2, 2: 2})
    assert phi(2) * phi(3) == phi(6)
    assert phi(3) * phi(3) == WittElement({1: 2, 3: 1})
    assert phi(1) * phi(7) == phi(7)


def test_product_matches_permutation_tensor():
    # class of an a-cycle times class of a b-cycle is the class of their tensor product
    def cycle(n):
        return SignedPartialPerm(n, n, tuple(((i + 1) % n, 1) for i in range(n)))

    for a, b in itertools.product(range(1, 9), repeat=2):
        assert witt_mul(class_of(cycle(a)), class_of(cycle(b))) == class_of(cycle(a).kron(cycle(b)))


@settings(max_examples=60, deadline=None)
@given(elements, elements, elements)
def test_ring_axioms(f, g, h):
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert ONE * f == f
    assert (f * g).rank() == f.rank() * g.rank()


@settings(max_examples=60, deadline=None)
@given(elements, elements)
def test_product_agrees_with_ghost_components(f, g):
    # t_m is a ring map and the t_m, m <= lcm, separate elements with that support
    L = ghost_bound(f, g)
    prod = f * g
    assert ghost(prod, L) == [a * b for a, b in zip(ghost(f, L), ghost(g, L))]
    assert ghost(prod, L) == ghost(prod, L)


# Frobenius


def test_frobenius_examples():
    assert frobenius(2, phi(4)) == phi(2, 2)
    assert frobenius(3, phi(4)) == phi(4)
    assert frobenius(0, phi(12)) == phi(1, 4)
    assert frobenius("2^inf", phi(12)) == phi(3, 2)
    assert frobenius(Supernatural.parse("2^inf*3"), phi(12)) == phi(1, 4)


@pytest.mark.parametrize("m", range(1, 25))
def test_frobenius_matches_root_powers(m):
    for n in range(1, 61):
        assert frobenius(m, phi(n)) == frobenius_by_roots(m, n)


def test_frobenius_matches_matrix_power():
    for a in enumerate_partial_perms(3, 3, signed=True):
        for m in range(1, 7):
            assert frobenius(m, class_of(a)) == class_of(a.power(m))


def test_supernatural_frobenius_is_stable_limit():
    # F_{2^inf} agrees with F_{2^k} for k large
    for n in range(1, 65):
        assert frobenius("2^inf", phi(n)) == frobenius(2**10, phi(n))
        assert frobenius(0, phi(n)) == frobenius(Supernatural({p: 8 for p in range(2, 65) if all(p % q for q in range(2, p))}), phi(n))


@settings(max_examples=40, deadline=None)
@given(elements, elements, st.integers(1, 30), st.integers(1, 30))
def test_frobenius_ring_map_and_composition(f, g, m, k):
    assert frobenius(m, f * g) == frobenius(m, f) * frobenius(m, g)
    assert frobenius(m, f + g) == frobenius(m, f) + frobenius(m, g)
    assert frobenius(m, frobenius(k, f)) == frobenius(m * k, f)


def test_supernatural_parse():
    s = Supernatural.parse("2^inf*3^2")
    assert s.exponent(2) == float("inf")
    assert s.exponent(3) == 2
    assert s.gcd_int(72) == 72
    assert s.gcd_int(5 * 27) == 9
    assert str(s) == "2^inf*3^2"
    assert Supernatural.of(12).to_int() == 12
    with pytest.raises(PreconditionError):
        Supernatural.parse("2^x")


# traces


def test_trace_is_root_sum():
    for n in range(1, 50):
        assert trace(phi(n)) == mobius(n)
        assert trace_tm(0, phi(n)) == totient(n)


@settings(max_examples=60, deadline=None)
@given(elements, elements, st.integers(1, 24))
def test_tm_is_ring_homomorphism(f, g, m):
    assert trace_tm(m, f * g) == trace_tm(m, f) * trace_tm(m, g)
    assert trace_tm(m, f + g) == trace_tm(m, f) + trace_tm(m, g)


def test_tm_of_phi_is_ramanujan():
    for n, m in itertools.product(range(1, 30), range(1, 30)):
        assert trace_tm(m, phi(n)) == ramanujan_sum(n, m)


# the Hermitian form


def test_form_orthogonality():
    for a, b in itertools.product(range(1, 25), repeat=2):
        assert hermitian_form(phi(a), phi(b)) == (totient(a) if a == b else 0)


def test_form_is_ramanujan_average():
    # <phi_a, phi_b> = (1/N) sum_{m<N} C_a^m conj(C_b^m) for any N divisible by lcm(a, b)
    for a, b in itertools.product(range(1, 25), repeat=2):
        N = math.lcm(a, b)
        avg = sum(ramanujan_sum(a, m) * ramanujan_sum(b, m) for m in range(N))
        assert avg % N == 0
        assert hermitian_form(phi(a), phi(b)) == avg // N


def test_adjoint_brute_force():
    for m in range(1, 13):
        for n, k in itertools.product(range(1, 31), repeat=2):
            lhs = hermitian_form(frobenius(m, phi(n)), phi(k))
            rhs = hermitian_form(phi(n), frobenius_adjoint(m, phi(k)))
            assert lhs == rhs


def test_adjoint_example():
    # k/gcd(k,2) = 3 for k in {3, 6}
    assert frobenius_adjoint(2, phi(3)) == phi(3) + phi(6)
    assert frobenius_adjoint(1, phi(5)) == phi(5)


# lambda operations


def exterior_power(a: SignedPartialPerm, k: int) -> SignedPartialPerm:
    """Lambda^k of a signed partial permutation, on the basis of sorted k-subsets."""
    n = a.nrows
    subsets = list(itertools.combinations(range(n), k))
    index = {s: i for i, s in enumerate(subsets)}
    assign = []
    for s in subsets:
        imgs = [a.assign[c] for c in s]
        if any(x is None for x in imgs):
            assign.append(None)
            continue
        rows = [r for r, _ in imgs]
        sign = math.prod(sg for _, sg in imgs)
        inversions = sum(1 for i, j in itertools.combinations(range(k), 2) if rows[i] > rows[j])
        sign *= (-1) ** inversions
        assign.append((index[tuple(sorted(rows))], sign))
    return SignedPartialPerm(len(subsets), len(subsets), tuple(assign))


def test_lambda_examples():
    assert lambda_op(0, phi(5)) == ONE
    assert lambda_op(1, phi(5)) == phi(5)
    assert lambda_op(2, phi(1, 4)) == phi(1, 6)
    # the two primitive 4th roots multiply to 1
    assert lambda_op(2, phi(4)) == ONE
    assert lambda_op(3, phi(4)) == WittElement()
    with pytest.raises(PreconditionError):
        lambda_op(2, WittElement({1: -1}))


def test_lambda_matches_exterior_powers():
    for n in range(1, 5):
        for a in enumerate_partial_perms(n, n, signed=True):
            f = class_of(a)
            for k in range(0, n + 1):
                assert lambda_op(k, f) == class_of(exterior_power(a, k)), (a, k)


@settings(max_examples=30, deadline=None)
@given(effective, effective, st.integers(0, 4))
def test_lambda_additivity(f, g, k):
    rhs = WittElement()
    for i in range(k + 1):
        rhs = rhs + lambda_op(i, f) * lambda_op(k - i, g)
    assert lambda_op(k, f + g) == rhs


# class map


def test_cycle_classes():
    assert cycle_class(3, 1) == phi(1) + phi(3)
    assert cycle_class(1, -1) == phi(2)
    assert cycle_class(2, -1) == phi(4)
    assert cycle_class(3, -1) == phi(2) + phi(6)


def test_class_of_examples():
    swap = SignedPartialPerm.from_matrix(
        __import__("nag.exact", fromlist=["frac_matrix"]).frac_matrix([[0, 1], [1, 0]])
    )
    assert class_of(swap) == phi(1) + phi(2)
    nil = SignedPartialPerm(2, 2, (None, (0, 1)))
    assert signed_cycle_type(nil).null == 2
    assert class_of(nil) == WittElement()
    with pytest.raises(PreconditionError):
        class_of(SignedPartialPerm(1, 2, (None, None)))


def test_class_of_counts_roots():
    for n in range(0, 5):
        for a in enumerate_partial_perms(n, n, signed=True):
            f = class_of(a, verify=True)
            assert f.rank() + signed_cycle_type(a).null == n
            assert f.is_effective()
            # t_1 is the trace of the matrix
            assert trace(f) == a.to_matrix().trace()
