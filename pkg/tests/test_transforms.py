import json
import random

import pytest

from arithsurf.bundles import (
    SplittingType,
    bundle_handle,
    check_parity,
    check_type_h0,
    splitting_type,
    type_profile,
)
from arithsurf.cohomology import h0_dim, sheaf_rank_degree
from arithsurf.errors import (
    CompositeModulus,
    DegreeMismatch,
    DuplicatePrime,
    NotSurjective,
    UnsupportedCenter,
)
from arithsurf.graded import Form, free_presentation, reduce_mod
from arithsurf.transforms import (
    BlowupFactorization,
    FiberQuotient,
    apply,
    blowup_factorization,
    default_surjection,
    prescribed_types,
    validate_quotient,
)


def split_handle(*twists):
    return bundle_handle(free_presentation(twists), assume_saturated=True)


def test_validate_default_surjection_accepted():
    B = split_handle(-1, -3)  # normalized shape for n = 2
    q = default_surjection(5, 2, 1)
    verdict = validate_quotient(B, q)
    assert verdict["ok"]


def test_validate_shared_factor_rejected():
    B = split_handle(-1, -1)
    # g = x0*u and h = x0*v share the fiber zero x0 = 0
    q = FiberQuotient.from_pair(3, 1, Form.make(2, (1, 0, 0)), Form.make(2, (0, 1, 0)))
    with pytest.raises(NotSurjective):
        validate_quotient(B, q)


def test_validate_degree_mismatch():
    B = split_handle(0, 0)
    with pytest.raises(DegreeMismatch):
        validate_quotient(B, FiberQuotient.make(3, -1, (Form.zero(-1), Form.zero(-1))))
    with pytest.raises(DegreeMismatch):
        validate_quotient(B, FiberQuotient.make(3, 1, (Form.monomial(1, 0), Form.zero(0))))


def test_horizontal_center_rejected():
    with pytest.raises(UnsupportedCenter):
        FiberQuotient.make(0, 0, (Form.constant(1),))


def test_composite_prime_rejected():
    with pytest.raises(CompositeModulus):
        FiberQuotient.make(6, 0, (Form.constant(1),))


def test_apply_basic_example():
    # split (-1,-1), quotient (p=2, m=0, g=x0, h=x1): jump to type 2 at 2
    B = split_handle(-1, -1)
    q = FiberQuotient.from_pair(2, 0, Form.monomial(1, 0), Form.monomial(1, 1))
    out = apply(B, q)
    prof = type_profile(out)
    assert prof.generic.type == 0
    assert prof.type_map() == {"generic": 0, 2: 2}


def test_apply_resplitting_kernel():
    # quotient (p, m, g=1, h=0) against split (m, b): kernel re-splits
    B = split_handle(0, -2)
    q = FiberQuotient.make(3, 0, (Form.constant(1), Form.zero(2)))
    out = apply(B, q)
    prof = type_profile(out)
    assert prof.generic == type_profile(B).generic
    assert prof.jumps == ()


def test_apply_preserves_rank_degree_and_off_primes():
    B = split_handle(-1, -2)
    q = default_surjection(3, 1, 2)
    out = apply(B, q)
    assert sheaf_rank_degree(out.presentation) == (2, B.degree)
    prof_in, prof_out = type_profile(B), type_profile(out)
    assert prof_in.generic == prof_out.generic
    assert [p for p, _ in prof_out.jumps] == [3]
    # fiberwise degree unchanged at the transformation prime too
    assert splitting_type(out, 3).degree == B.degree


def test_prescribed_types_examples():
    B = prescribed_types(0, [(2, 1), (3, 2)])
    assert type_profile(B).type_map() == {"generic": 0, 2: 2, 3: 4}
    B = prescribed_types(3, [])
    prof = type_profile(B)
    assert prof.generic == SplittingType(-4, -1) and prof.jumps == ()
    B = prescribed_types(1, [(5, 3)])
    assert type_profile(B).type_map() == {"generic": 1, 5: 7}
    assert check_type_h0(B)[5] == (6, 3)


def test_prescribed_types_duplicate_prime():
    with pytest.raises(DuplicatePrime):
        prescribed_types(0, [(2, 1), (2, 2)])


def test_chain_order_does_not_matter():
    a = type_profile(prescribed_types(1, [(2, 1), (5, 1)])).type_map()
    b = type_profile(prescribed_types(1, [(5, 1), (2, 1)])).type_map()
    assert a == b == {"generic": 1, 2: 3, 5: 3}


def test_prescribed_types_custom_surjection():
    # any coprime pair of the right degrees is accepted
    g = Form.make(1, (1, 1))  # x0 + x1
    h = Form.make(3, (0, 0, 0, 1))  # x1^3, coprime to g
    B = prescribed_types(2, [(3, 1, (g, h))])
    assert type_profile(B).type_map() == {"generic": 2, 3: 4}


def test_prescribed_types_noncoprime_surjection_rejected():
    g = Form.make(1, (1, 0))  # x0
    h = Form.make(3, (0, 1, 0, 0))  # x0^2 x1
    with pytest.raises(NotSurjective):
        prescribed_types(2, [(3, 1, (g, h))])


def test_parity_and_h0_on_randomized_prescriptions():
    rng = random.Random(41)
    primes = [2, 3, 5, 7, 11, 13]
    for _ in range(6):
        n = rng.randint(0, 2)
        count = rng.randint(1, 2)
        ps = rng.sample(primes, count)
        jumps = [(p, rng.randint(1, 2)) for p in ps]
        B = prescribed_types(n, jumps)
        deltas = check_parity(B)
        assert set(deltas) == set(ps)
        assert all(delta == 2 * ni for (p, ni), delta in zip(sorted(jumps), sorted(deltas.items()) and [deltas[p] for p, _ in sorted(jumps)]))
        for p, (delta, fib) in check_type_h0(B).items():
            assert delta == 2 * fib


def test_blowup_record_round_trip_and_degrees():
    B = split_handle(-1, -2)  # normalized, n = 1
    q = default_surjection(5, 1, 2)  # ni = 2
    rec = blowup_factorization(B, q)
    assert rec.prime == 5
    assert rec.center_V.degree == 2  # the degree n_i section
    assert rec.center_V.self_intersection == 1 + 2 * 2
    assert rec.center_U.self_intersection == -(1 + 2 * 2)
    assert rec.center_V.prime == rec.center_U.prime
    again = BlowupFactorization.from_json(json.loads(json.dumps(rec.to_json())))
    assert again == rec


def test_identity_free_factorization_standard_sections():
    # trivial quotient data on a split bundle: the centers are the two
    # standard sections of the fiber, with opposite self-intersections
    S = split_handle(0, -2)
    q = FiberQuotient.make(3, 0, (Form.constant(1), Form.zero(2)))
    rec = blowup_factorization(S, q)
    assert rec.center_V.degree == 0
    assert rec.center_V.self_intersection == 2
    assert rec.center_U.self_intersection == -2
    assert rec.source_profile == rec.target_profile


def test_fiber_quotient_json_round_trip():
    q = default_surjection(7, 3, 2)
    assert FiberQuotient.from_json(json.loads(json.dumps(q.to_json()))) == q
    general = FiberQuotient.make(3, 1, (Form.constant(2), Form.monomial(1, 1), Form.zero(-1)))
    assert FiberQuotient.from_json(json.loads(json.dumps(general.to_json()))) == general
