import random
from fractions import Fraction

import pytest

from sl2lce.field import (
    INFINITY,
    FieldConfig,
    PadicScalar,
    PrecisionError,
    SquareClass,
    class_of_minus_one,
    gamma_of_extension,
    random_scalar,
)
from sl2lce.lie import (
    ElementKind,
    FilterPoint,
    Mat2,
    OrbitLabel,
    Parity,
    Sl2Element,
    Transport,
    ZERO_ORBIT,
    classify,
    cone_oracle,
    coset_orbit,
    depth_at,
    diag_pi_power,
    eta_matrix,
    gx_orbit_reps,
    in_filtration,
    lower_unipotent,
    nil_support,
    nilpotent_rep,
    parity_depth,
    regular_orbits,
    to_x0_frame,
    transport,
    upper_unipotent,
)

F3 = FieldConfig(3)
F5 = FieldConfig(5)
X0, X1, Z0 = FilterPoint.X0, FilterPoint.X1, FilterPoint.Z0


def el(F, a, b, c):
    return Sl2Element.parse(F, f"{a},{b},{c}")


def rand_integral_conjugator(F, rng):
    # an SL(2,R)-type stabilizer element: L(s) D(unit) U(t) with integral entries
    s = random_scalar(F, rng, val_range=(0, 3), allow_zero=True)
    t = random_scalar(F, rng, val_range=(0, 3), allow_zero=True)
    u = random_scalar(F, rng, val_range=(0, 0))
    g = lower_unipotent(F, s)
    g = g.mul(Mat2.make(F, u, 0, 0, u.inv()))
    return g.mul(upper_unipotent(F, t))


def rand_element(F, rng):
    return Sl2Element(
        random_scalar(F, rng, val_range=(-3, 3), allow_zero=True),
        random_scalar(F, rng, val_range=(-3, 3), allow_zero=True),
        random_scalar(F, rng, val_range=(-3, 3), allow_zero=True),
    )


def scan_depth_z0(X):
    # independent membership scan over r in (1/2)Z
    best = None
    for twice_r in range(-40, 41):
        r = Fraction(twice_r, 2)
        ok = (X.a.val >= -(-r).__floor__()  # ceil(r)
              and X.b.val >= -(-(r - Fraction(1, 2))).__floor__()
              and X.c.val >= -(-(r + Fraction(1, 2))).__floor__())
        if ok:
            best = r
    return best


class TestDepth:
    def test_upper_nilpotent(self):
        X = el(F3, 0, 1, 0)
        assert depth_at(X, X0) == 0
        assert depth_at(X, X1) == 1

    def test_zero(self):
        assert depth_at(Sl2Element.zero(F3), X0) == INFINITY

    def test_z0_formula_matches_membership_scan(self):
        rng = random.Random(2)
        for _ in range(200):
            X = rand_element(F3, rng)
            if X.is_zero:
                continue
            assert depth_at(X, Z0) == scan_depth_z0(X)

    def test_z0_ramified_element(self):
        # [[0,1],[pi,0]] satisfies all three constraints up to r = 1/2
        assert depth_at(el(F3, 0, 1, "1:1"), Z0) == Fraction(1, 2)
        assert depth_at(el(F3, 0, "-1:1", 1), Z0) == Fraction(-1, 2)

    def test_in_filtration(self):
        X = el(F3, "1:1", 0, 0)
        assert in_filtration(X, X0, 1)
        assert not in_filtration(el(F3, 0, 1, 0), X0, 0, strict=True)
        assert in_filtration(el(F3, 0, 1, "1:1"), X1, 0)

    def test_in_filtration_matches_depth(self):
        rng = random.Random(4)
        for _ in range(100):
            X = rand_element(F5, rng)
            if X.is_zero:
                continue
            for pt in (X0, X1, Z0):
                d = depth_at(X, pt)
                assert in_filtration(X, pt, d)
                assert not in_filtration(X, pt, d, strict=True)

    def test_conjugation_invariance(self):
        rng = random.Random(8)
        checked = 0
        for _ in range(200):
            X = rand_element(F5, rng)
            if X.is_zero:
                continue
            g = rand_integral_conjugator(F5, rng)
            try:
                assert depth_at(g.conj(X), X0) == depth_at(X, X0)
                checked += 1
            except PrecisionError:
                continue
        assert checked >= 150


class TestClassify:
    def test_upper_nilpotent_label(self):
        for F in (F3, F5):
            eps = F.eps
            k = classify(el(F, 0, eps, 0))
            assert k.kind == ElementKind.NILPOTENT
            assert k.orbit == OrbitLabel(SquareClass.EPS)

    def test_lower_nilpotent_label_via_weyl(self):
        # [[0,0],[c,0]] is conjugate to [[0,-c],[0,0]]
        rng = random.Random(1)
        for _ in range(100):
            c = random_scalar(F5, rng)
            k = classify(Sl2Element.make(F5, 0, 0, c))
            w = Mat2.make(F5, 0, 1, -1, 0)
            k2 = classify(w.conj(Sl2Element.make(F5, 0, 0, c)))
            assert k.kind == k2.kind == ElementKind.NILPOTENT
            assert k.orbit == k2.orbit

    def test_split(self):
        k = classify(el(F3, 1, 0, 0))
        assert k.kind == ElementKind.SPLIT_SS

    def test_aniso(self):
        k = classify(el(F3, 0, 1, "0:2"))  # -det = eps
        assert k.kind == ElementKind.ANISO_SS
        assert k.disc == SquareClass.EPS

    def test_nilpotency_cutoff(self):
        # val(-det) beyond 2(N-2) is declared nilpotent
        N = F3.precision
        X = Sl2Element.make(F3, 0, 1, PadicScalar.pi_pow(F3, 2 * N - 3))
        assert classify(X).kind == ElementKind.NILPOTENT


class TestCosetOrbit:
    def test_examples(self):
        assert coset_orbit(el(F3, 0, "-2:1", 1), X0) == OrbitLabel(SquareClass.ONE)
        assert coset_orbit(el(F3, 0, "-1:1", 0), X0) == OrbitLabel(SquareClass.PI)
        assert coset_orbit(el(F3, 1, 0, 0), X0) is None

    def test_explicit_nilpotent_witness(self):
        # the returned label is witnessed by a nilpotent element of a
        # G_x-conjugate coset: conjugate the residue to upper form, take the
        # b-entry nilpotent, check it differs from the element by something
        # strictly deeper
        rng = random.Random(12)
        checked = 0
        for F in (F3, F5):
            for _ in range(300):
                X = rand_element(F, rng)
                if X.is_zero:
                    continue
                try:
                    lab = coset_orbit(X, X0)
                except PrecisionError:
                    continue
                if lab is None:
                    continue
                try:
                    t = depth_at(X, X0)
                    p = F.p
                    ra = X.a.residue(1) if X.a.val == t else 0
                    rb = X.b.residue(1) if X.b.val == t else 0
                    if rb == 0:
                        w = Mat2.make(F, 0, 1, -1, 0)
                        X = w.conj(X)
                        ra = X.a.residue(1) if X.a.val == t else 0
                        rb = X.b.residue(1) if X.b.val == t else 0
                    assert rb != 0
                    g = lower_unipotent(
                        F, PadicScalar.from_int(F, (ra * pow(rb, -1, p)) % p))
                    Xc = g.conj(X)
                    assert coset_orbit(Xc, X0) == lab
                    W = nilpotent_rep(F, Xc.b)
                    assert classify(W).orbit == lab
                    assert depth_at(Xc.add(W.scale(PadicScalar.from_int(F, -1))), X0) > t
                    checked += 1
                except PrecisionError:
                    continue
        assert checked > 50

    def test_x1_rule_consistent_with_eta_transport(self):
        rng = random.Random(13)
        for F in (F3, F5):
            for _ in range(200):
                X = rand_element(F, rng)
                if X.is_zero:
                    continue
                try:
                    lab1 = coset_orbit(X, X1)
                    lab0 = coset_orbit(to_x0_frame(X, X1), X0)
                except PrecisionError:
                    continue
                if lab0 is None:
                    assert lab1 is None
                else:
                    assert lab1 == transport(lab0, Transport.ETA, F)

    def test_perturbation_invariance(self):
        rng = random.Random(3)
        for F in (F3, F5):
            for _ in range(100):
                X = rand_element(F, rng)
                if X.is_zero:
                    continue
                for pt in (X0, X1):
                    lab = coset_orbit(X, pt)
                    d = depth_at(X, pt)
                    # perturb by something strictly deeper
                    Y = rand_element(F, rng)
                    if Y.is_zero:
                        continue
                    shift = int(d - depth_at(Y, pt)) + 1
                    Yd = Y.scale(PadicScalar.pi_pow(F, shift))
                    assert depth_at(Yd, pt) > d
                    try:
                        assert coset_orbit(X.add(Yd), pt) == lab
                    except PrecisionError:
                        continue


class TestNilSupport:
    def test_split_all_four(self):
        assert nil_support(el(F3, 1, 0, 0)) == frozenset(regular_orbits())

    def test_unramified(self):
        got = nil_support(el(F3, 0, 1, "0:2"))
        assert got == {OrbitLabel(SquareClass.ONE), OrbitLabel(SquareClass.EPS)}

    def test_ramified_p3(self):
        got = nil_support(el(F3, 0, 1, "1:1"))
        assert got == {OrbitLabel(SquareClass.ONE), OrbitLabel(SquareClass.EPSPI)}

    def test_nilpotent_is_own_support(self):
        assert nil_support(el(F5, 0, "1:1", 0)) == {OrbitLabel(SquareClass.PI)}

    def test_conjugation_invariance(self):
        rng = random.Random(21)
        checked = 0
        for _ in range(150):
            X = rand_element(F5, rng)
            if X.is_zero:
                continue
            g = rand_integral_conjugator(F5, rng)
            try:
                assert nil_support(g.conj(X)) == nil_support(X)
                checked += 1
            except PrecisionError:
                continue
        assert checked >= 100

    def test_square_scaling_invariance(self):
        rng = random.Random(22)
        checked = 0
        for _ in range(150):
            X = rand_element(F3, rng)
            if X.is_zero:
                continue
            c = random_scalar(F3, rng, val_range=(-1, 1))
            try:
                assert nil_support(X.scale(c * c)) == nil_support(X)
                checked += 1
            except PrecisionError:
                continue
        assert checked >= 100

    def test_aniso_pair_differs_by_gamma(self):
        rng = random.Random(30)
        for F in (F3, F5):
            for _ in range(100):
                X = rand_element(F, rng)
                if X.is_zero:
                    continue
                try:
                    k = classify(X)
                except PrecisionError:
                    continue
                if k.kind != ElementKind.ANISO_SS:
                    continue
                labs = nil_support(X)
                assert len(labs) == 2
                a, b = [l.cls for l in labs]
                assert a * b == gamma_of_extension(F, k.disc)


class TestConeOracle:
    def test_nilpotent_subset(self):
        X = el(F3, 0, 1, 0)
        assert cone_oracle(X, 50, seed=1) <= {OrbitLabel(SquareClass.ONE)}

    def test_split_finds_all(self):
        X = el(F3, 1, 0, 0)
        assert cone_oracle(X, 500, seed=2) == frozenset(regular_orbits())

    def test_unramified_exact(self):
        X = el(F3, 0, 1, "0:2")
        assert cone_oracle(X, 500, seed=3) == nil_support(X)

    def test_never_overshoots(self):
        rng = random.Random(77)
        for F in (F3, F5):
            for _ in range(40):
                X = rand_element(F, rng)
                if X.is_zero:
                    continue
                try:
                    expected = nil_support(X)
                except PrecisionError:
                    continue
                assert cone_oracle(X, 60, seed=rng.randint(0, 10**6)) <= expected


class TestOrbitRepsParityTransport:
    def test_reps_depth_range(self):
        reps = gx_orbit_reps(F3, OrbitLabel(SquareClass.ONE), X0, 0, 2)
        assert [depth_at(r, X0) for r in reps] == [0, -2]

    def test_reps_pi_label(self):
        reps = gx_orbit_reps(F3, OrbitLabel(SquareClass.PI), X0, 1, 1)
        assert len(reps) == 1 and depth_at(reps[0], X0) == -1
        assert classify(reps[0]).orbit == OrbitLabel(SquareClass.PI)

    def test_reps_x1_parity_flip(self):
        reps = gx_orbit_reps(F3, OrbitLabel(SquareClass.ONE), X1, -1, -1)
        assert len(reps) == 1 and depth_at(reps[0], X1) == 1

    def test_parity(self):
        assert parity_depth(OrbitLabel(SquareClass.ONE), X0) == Parity.EVEN
        assert parity_depth(OrbitLabel(SquareClass.ONE), X1) == Parity.ODD
        assert parity_depth(OrbitLabel(SquareClass.PI), X0) == Parity.ODD

    def test_parity_matches_reps(self):
        for lab in regular_orbits():
            for pt in (X0, X1):
                reps = gx_orbit_reps(F5, lab, pt, 1, 4)
                for r in reps:
                    d = -int(depth_at(r, pt))
                    expected_even = parity_depth(lab, pt) == Parity.EVEN
                    assert (d % 2 == 0) == expected_even

    def test_transport(self):
        one = OrbitLabel(SquareClass.ONE)
        assert transport(one, Transport.ETA, F3) == OrbitLabel(SquareClass.PI)
        assert transport(one, Transport.OMEGA, F3) == OrbitLabel(
            class_of_minus_one(F3) * SquareClass.PI)
        for lab in regular_orbits():
            assert transport(transport(lab, Transport.OMEGA, F5),
                             Transport.OMEGA, F5) == lab
        assert transport(ZERO_ORBIT, Transport.ETA, F3) == ZERO_ORBIT

    def test_transport_matches_matrix_conjugation(self):
        rng = random.Random(91)
        for F in (F3, F5):
            for lab in regular_orbits():
                reps = gx_orbit_reps(F, lab, X0, 0, 1)
                for X in reps:
                    Y = eta_matrix(F).conj(X)
                    assert classify(Y).orbit == transport(lab, Transport.ETA, F)

    def test_to_x0_frame_depth(self):
        rng = random.Random(14)
        for _ in range(100):
            X = rand_element(F3, rng)
            if X.is_zero:
                continue
            assert depth_at(to_x0_frame(X, X1), X0) == depth_at(X, X1)
