"""Identity and inequality suites over parameter grids.

The identity suite compares closed-form polynomials and Wiener indices
against quantities computed from the constructed graphs. The bounds suite
walks each theorem's inequality chain at every grid point and records the
margin of every step, exactly where the quantity is rational.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .graph import ExtremalParams, extremal_g1, extremal_g2, extremal_g_star, g2_independent_size
from .polynomials import (
    aux_f,
    aux_g,
    aux_h,
    beta_poly,
    charpoly,
    count_roots_above,
    f_drop_closed_form,
    g2_distance_quotient,
    gamma_at_isolated_max,
    gamma_eval,
    largest_real_root,
    phi_b1,
    phi_b2,
    phi_b2_at_upper,
    phi_b_star,
    phi_b_star_at_upper,
    phi_b_star_bracket,
    three_block_distance_quotient,
)
from .report import CheckReport
from .spectral import (
    adjacency_matrix,
    distance_matrix,
    quotient_matrix,
    signless_laplacian,
    spectral_radius,
    wiener_index,
)

THEOREMS = ("adjacency", "signless", "distance")
DEFAULT_MS = (2, 3, 4)
DEFAULT_BS = (1, 2, 3)
QUOTIENT_ROOT_TOL = 1e-6
NUMERIC_MARGIN = 1e-6


def theorem_threshold(theorem: str, m: int, b: int) -> int:
    """Smallest order ``n`` covered by the named theorem."""
    shared = (2 * b + 2) * m * m + (4 * b + 1) * m + 2 * b - 1
    if theorem == "adjacency":
        return max((b * b + 2 * b + 1) * m, shared)
    if theorem == "signless":
        return max((b * b + 2 * b + 1) * m + b * b - b, shared)
    if theorem == "distance":
        return max(2 * b * b * m + b * b - b + 1, 3 * m * m * b + 3 * m * b + m + 4 * b)
    raise ValueError(f"unknown theorem {theorem!r}")


def wiener_closed_form_twice(n: int, m: int, b: int) -> int:
    return n * n + (2 * b - 1) * n - 2 * b * b * m - b * b + b


def identity_grid(ms: Iterable[int] = DEFAULT_MS, bs: Iterable[int] = DEFAULT_BS, n_max: int = 60):
    """Every valid ``(n, m, b)`` with ``n <= n_max``."""
    for m in ms:
        for b in bs:
            for n in range((m + 1) * b, n_max + 1):
                yield n, m, b


def theorem_grid(theorem: str, ms: Iterable[int] = DEFAULT_MS, bs: Iterable[int] = DEFAULT_BS, span: int = 20):
    for m in ms:
        for b in bs:
            start = theorem_threshold(theorem, m, b)
            for n in range(start, start + span + 1):
                yield n, m, b


def isolated_range(n: int, m: int, b: int) -> range:
    """Integers ``i`` with ``b + 1 <= i <= n / (m + 1)``."""
    return range(b + 1, n // (m + 1) + 1)


# --- identity suite ---


def check_wiener(report: CheckReport, n: int, m: int, b: int) -> None:
    g, _ = extremal_g_star(ExtremalParams(n, m, b))
    twice = 2 * wiener_index(g)
    expected = wiener_closed_form_twice(n, m, b)
    report.add("wiener_identity", {"n": n, "m": m, "b": b}, twice == expected, twice - expected)


def _distance_charpoly(g, labeling):
    qm = quotient_matrix(distance_matrix(g), labeling)
    return qm, charpoly(qm.entries)


def check_three_block_charpoly(report: CheckReport, n: int, m: int, t: int, name: str) -> None:
    g, lab = extremal_g1(n, m, t)
    qm, cp = _distance_charpoly(g, lab)
    expected = phi_b_star(n, m, t) if name == "charpoly_b_star" else phi_b1(n, m, t)
    params = {"n": n, "m": m, ("b" if name == "charpoly_b_star" else "i"): t}
    report.add(name, params, qm.equitable and cp == expected, detail=str(cp))
    report.add(
        name + "_matrix",
        params,
        qm.as_int_rows() == three_block_distance_quotient(n, m, t),
    )


def check_g2_charpoly(report: CheckReport, n: int, m: int) -> None:
    g, lab = extremal_g2(n, m)
    qm, cp = _distance_charpoly(g, lab)
    params = {"n": n, "m": m}
    report.add("charpoly_b2", params, qm.equitable and cp == phi_b2(n, m), detail=str(cp))
    report.add("charpoly_b2_matrix", params, qm.as_int_rows() == g2_distance_quotient(n, m))


def check_phi_difference(report: CheckReport, n: int, m: int, b: int, i: int) -> None:
    diff = phi_b1(n, m, i) - phi_b_star(n, m, b)
    rhs = (i - b) * beta_poly(n, m, b, i)
    report.add("identity_phi_difference", {"n": n, "m": m, "b": b, "i": i}, diff == rhs)


def check_quotient_roots(report: CheckReport, n: int, m: int, b: int) -> None:
    """Perron root of each graph matrix equals that of its 3-block quotient."""
    g, lab = extremal_g_star(ExtremalParams(n, m, b))
    params = {"n": n, "m": m, "b": b}
    for label, builder in (("distance", distance_matrix), ("adjacency", adjacency_matrix), ("signless", signless_laplacian)):
        mat = builder(g)
        qm = quotient_matrix(mat, lab)
        poly = phi_b_star(n, m, b) if label == "distance" else charpoly(qm.entries)
        hint = phi_b_star_bracket(n, b) if label == "distance" else None
        root = largest_real_root(poly, hint).root
        radius = spectral_radius(mat).value
        gap = abs(radius - root)
        report.add(f"quotient_root_{label}", params, qm.equitable and gap <= QUOTIENT_ROOT_TOL, gap)


def verify_identities(
    ms: Iterable[int] = DEFAULT_MS,
    bs: Iterable[int] = DEFAULT_BS,
    n_max: int = 60,
    points: Iterable[tuple[int, int, int]] | None = None,
    quotient_roots: bool = True,
) -> CheckReport:
    report = CheckReport("verify-identities")
    grid = list(points) if points is not None else list(identity_grid(ms, bs, n_max))
    g1_done: set[tuple[int, int, int]] = set()
    g2_done: set[tuple[int, int]] = set()
    for n, m, b in grid:
        check_wiener(report, n, m, b)
        check_three_block_charpoly(report, n, m, b, "charpoly_b_star")
        for i in isolated_range(n, m, b):
            if (n, m, i) not in g1_done:
                g1_done.add((n, m, i))
                check_three_block_charpoly(report, n, m, i, "charpoly_b1")
            check_phi_difference(report, n, m, b, i)
        if n >= m + 2 and (n, m) not in g2_done:
            g2_done.add((n, m))
            check_g2_charpoly(report, n, m)
        if quotient_roots:
            check_quotient_roots(report, n, m, b)
    return report


# --- bounds suite ---


def _rho(g) -> float:
    return spectral_radius(adjacency_matrix(g)).value


def _q(g) -> float:
    return spectral_radius(signless_laplacian(g)).value


def check_f_maximum(report: CheckReport, n: int, m: int, b: int, aux, label: str) -> None:
    """``aux(b+1) >= aux(i)`` on the isolated range, plus the closed-form drop."""
    params = {"n": n, "m": m, "b": b}
    top = aux(n, m, b + 1)
    values = [top - aux(n, m, i) for i in isolated_range(n, m, b)]
    margin = min(values) if values else None
    report.add(f"{label}_max_at_b_plus_1", params, all(v >= 0 for v in values), margin,
               "" if values else "empty isolated range")
    drop = top - aux(n, m, Fraction(n, m + 1))
    closed = f_drop_closed_form(n, m, b)
    report.add(f"{label}_drop_closed_form", params, drop == closed and closed >= 0, closed)


def _two_e_g2(n: int, m: int) -> int:
    c = g2_independent_size(n, m)
    return (n - c) * (n + c - 1)


def bounds_adjacency(report: CheckReport, n: int, m: int, b: int, numeric: bool = True) -> None:
    params = {"n": n, "m": m, "b": b}
    target = n - b - 1
    for i in isolated_range(n, m, b):
        g1, _ = extremal_g1(n, m, i)
        two_e = 2 * g1.num_edges
        report.add("edges_g1_vs_f", {**params, "i": i}, two_e - n + 1 == aux_f(n, m, i))
    check_f_maximum(report, n, m, b, aux_f, "f")
    fb = aux_f(n, m, b + 1)
    report.add("sqrt_f_below_target", params, fb < target * target, target * target - fb)
    h = aux_h(n, m)
    g2, _ = extremal_g2(n, m)
    report.add("edges_g2_vs_h", params, 2 * g2.num_edges == _two_e_g2(n, m) and _two_e_g2(n, m) - n + 1 < h,
               h - (_two_e_g2(n, m) - n + 1))
    report.add("sqrt_h_below_target", params, h < target * target, target * target - h)
    if numeric:
        g, _ = extremal_g_star(ExtremalParams(n, m, b))
        margin = _rho(g) - target
        report.add("rho_extremal_above_target", params, margin > NUMERIC_MARGIN, margin)


def bounds_signless(report: CheckReport, n: int, m: int, b: int, numeric: bool = True) -> None:
    params = {"n": n, "m": m, "b": b}
    target = 2 * (n - b - 1)
    check_f_maximum(report, n, m, b, aux_g, "g")
    bound = Fraction(aux_g(n, m, b + 1), n - 1)
    report.add("g_ratio_below_target", params, bound <= target, target - bound)
    r = Fraction(n + 1, m + 1)
    g2_rational = (n - r) * (n + r) / (n - 1) + n - 2
    g2_bound = Fraction(_two_e_g2(n, m), n - 1) + n - 2
    report.add("das_g2_below_target", params, g2_bound < g2_rational < target, target - g2_rational)
    if numeric:
        g, _ = extremal_g_star(ExtremalParams(n, m, b))
        margin = _q(g) - target
        report.add("q_extremal_above_target", params, margin > NUMERIC_MARGIN, margin)


def bounds_distance(report: CheckReport, n: int, m: int, b: int, numeric: bool = True) -> None:
    params = {"n": n, "m": m, "b": b}
    phi = phi_b_star(n, m, b)
    lower = n + 2 * b - 2
    upper = n + 3 * b - 1
    root = largest_real_root(phi, phi_b_star_bracket(n, b)).root

    twice_w = wiener_closed_form_twice(n, m, b)
    rayleigh = Fraction(twice_w, n)
    report.add("rayleigh_above_lower", params, rayleigh > lower, rayleigh - lower)
    if numeric:
        g, _ = extremal_g_star(ExtremalParams(n, m, b))
        report.add("wiener_identity", params, 2 * wiener_index(g) == twice_w)
        mu_star = spectral_radius(distance_matrix(g)).value
        report.add("mu_extremal_matches_root", params, abs(mu_star - root) <= QUOTIENT_ROOT_TOL, mu_star - root)
    # exact certificate: some root of phi_B* lies above n + 2b - 2
    above_lower = count_roots_above(phi, lower)
    report.add("root_b_star_above_lower", params, above_lower >= 1, root - lower)

    deriv = phi.derivative()
    d_at = deriv(n - b - 2)
    d_closed = n * n - (8 * b + 3) * n + (3 * m + 7) * b * b + 4 * b + 1
    report.add("phi_b_star_increasing", params,
               d_at == d_closed and d_at > 0 and Fraction(b + n - 4, 3) < n - b - 2, d_at)
    at_upper = phi(upper)
    report.add("phi_b_star_at_upper", params,
               at_upper == phi_b_star_at_upper(n, m, b) and at_upper > 0, at_upper)
    report.add("root_b_star_below_upper", params, count_roots_above(phi, upper) == 0, upper - root)

    phi2 = phi_b2(n, m)
    at2 = phi2(upper)
    root2 = largest_real_root(phi2).root
    report.add("phi_b2_at_upper", params, at2 == phi_b2_at_upper(n, m, b) and at2 < 0, at2)
    report.add("root_b2_above_upper", params, count_roots_above(phi2, upper) >= 1, root2 - upper)

    gamma_cap = gamma_at_isolated_max(n, m, b)
    report.add("gamma_at_isolated_max", params,
               gamma_eval(n, m, b, Fraction(n, m + 1)) == gamma_cap and gamma_cap < 0, gamma_cap)
    for i in isolated_range(n, m, b):
        beta = beta_poly(n, m, b, i)
        vertex = Fraction(beta.coeffs[1], 2)
        gi = gamma_eval(n, m, b, i)
        ok = vertex < lower and beta(lower) == gi and gi <= gamma_cap
        report.add("beta_bounded_by_gamma", {**params, "i": i}, ok, gi)
        root1 = largest_real_root(phi_b1(n, m, i), phi_b_star_bracket(n, i)).root
        report.add("root_b1_above_root_b_star", {**params, "i": i}, root1 - root > 1e-9, root1 - root)


BOUNDS = {"adjacency": bounds_adjacency, "signless": bounds_signless, "distance": bounds_distance}


def verify_bounds(
    theorems: Iterable[str] = THEOREMS,
    ms: Iterable[int] = DEFAULT_MS,
    bs: Iterable[int] = DEFAULT_BS,
    span: int = 20,
    numeric: bool = True,
) -> CheckReport:
    report = CheckReport("verify-bounds")
    ms, bs = list(ms), list(bs)
    for theorem in theorems:
        for n, m, b in theorem_grid(theorem, ms, bs, span):
            BOUNDS[theorem](report, n, m, b, numeric)
    return report
