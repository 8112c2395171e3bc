"""The acceptance battery, shared by ``eqspec verify-all`` and the test suite.

Every criterion returns a :class:`CriterionResult` whose checks compare a
computed quantity against an oracle that is independent of the code path
under test (transcribed case lists, brute force, closed forms).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import blaschke, closed_form, disk_steklov, mckay, rational_maps, sphere_laplace, symmetry
from .report import Check

SEED = 0x5EED
PI = math.pi


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list[Check] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    runtime: float = 0.0
    timings: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, name, expected, actual, passed, provenance="DERIVED") -> bool:
        self.checks.append(Check(name, expected, actual, bool(passed), provenance))
        return bool(passed)

    def budget(self, name: str, limit: float, elapsed: float) -> bool:
        """Wall-clock check; the measured time stays out of serialized output."""
        self.timings[name] = elapsed
        ok = elapsed < limit
        return self.add(f"{name} < {limit:g} s", "within budget", "within budget" if ok else "exceeded", ok)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        n_ok = sum(c.passed for c in self.checks)
        msg = f"criterion {self.number:2d} {status}  {self.title}  ({n_ok}/{len(self.checks)} checks, {self.runtime:.2f}s)"
        bad = self.failed()
        if bad:
            msg += "  failing: " + "; ".join(c.name for c in bad[:4]) + (" ..." if len(bad) > 4 else "")
        return msg


def _timed(fn):
    def run(*args, **kwargs) -> CriterionResult:
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.runtime = time.perf_counter() - t0
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


# --------------------------------------------------------------------------
# transcribed case lists


def _round(k: int) -> Fraction:
    m = math.isqrt(k)
    return Fraction(4 * m * (m + 1))


def stated_case(family: str, k: int) -> tuple[Fraction, str] | None:
    """Coefficient of pi stated by the case lists for the platonic families, or
    None where the lists are silent.  Written out by hand, not derived from the
    semigroup code."""
    if family in ("T", "Td"):
        if k in (1, 2, 3):
            return Fraction(8), "T family, k in {1,2,3}: 8 pi"
        return Fraction(8 * k), "T family, k >= 4: 8 pi k"
    if family in ("Th", "O", "Oh"):
        if 1 <= k <= 5:
            return _round(k), "O family, 1 <= k <= 5: round sphere"
        if k in (10, 11):
            return Fraction(72), "O family, k in {10,11}: 72 pi"
        return Fraction(8 * k), "O family, k in [6,9] or k >= 12: 8 pi k"
    if family in ("I", "Ih"):
        if 1 <= k <= 11:
            return _round(k), "I family, 1 <= k <= 11: round sphere"
        in_semigroup = any(12 * a + 20 * b == k - 30 * c for c in range(k // 30 + 1) for b in range(k // 20 + 1) for a in range(k // 12 + 1))
        if in_semigroup or k >= 60:
            return Fraction(8 * k), "I family, k in N_I or k >= 60: 8 pi k"
        return None
    raise ValueError(family)


ADMISSIBLE_LISTS = {
    "O": {**{k: [(1, 1)] for k in (1, 2, 3)}, 4: [(1, 1), (2, 3)], 5: [(1, 1), (2, 3), (1, 4)]},
    "I": {
        **{k: [(1, 1)] for k in (1, 2, 3)},
        **{k: [(1, 1), (2, 3)] for k in range(4, 9)},
        **{k: [(1, 1), (2, 3), (3, 6), (1, 7)] for k in (9, 10, 11)},
    },
}
FAMILY_MEMBERS = {"O": ("Th", "O", "Oh"), "I": ("I", "Ih")}


# --------------------------------------------------------------------------
# criteria


@_timed
def criterion_1() -> CriterionResult:
    """Closed-form golden tables for the platonic families, k <= 70."""
    res = CriterionResult(1, "equivariant sphere closed forms match the case lists (k <= 70)")
    closed_form.orbit_semigroup.cache_clear()
    symmetry.build_group.cache_clear()
    t0 = time.perf_counter()
    mismatches, covered = [], 0
    for fam in ("T", "Td", "Th", "O", "Oh", "I", "Ih"):
        for k in range(1, 71):
            case = stated_case(fam, k)
            if case is None:
                continue
            covered += 1
            value, _, _ = closed_form.lambda_equivariant_sphere(fam, k)
            if value.coef != case[0]:
                mismatches.append((fam, k, str(value), f"{case[0]}*pi"))
    elapsed = time.perf_counter() - t0
    res.add("all covered cases equal", 0, len(mismatches), not mismatches, "CITED")
    res.add("O family Lambda_10", "72*pi", str(closed_form.lambda_equivariant_sphere("O", 10)[0]),
            closed_form.lambda_equivariant_sphere("O", 10)[0].coef == 72, "CITED")
    res.add("O family Lambda_11", "72*pi", str(closed_form.lambda_equivariant_sphere("O", 11)[0]),
            closed_form.lambda_equivariant_sphere("O", 11)[0].coef == 72, "CITED")
    res.budget("runtime", 1, elapsed)
    res.details = {"covered_cases": covered, "mismatches": mismatches}
    return res


@_timed
def criterion_2() -> CriterionResult:
    """Disk closed form against brute force over bubble counts."""
    res = CriterionResult(2, "disk closed form equals brute-force max; sharpness congruence")
    bad, bad_sharp = [], []
    for n in range(1, 13):
        for k in range(1, 201):
            brute = max(2 * b + 2 * ((k - b + 1) // 2) for b in range(0, k + 1, n))
            got = closed_form.steklov_equivariant_disk(n, k).coef
            if got != brute:
                bad.append((n, k, got, brute))
            if closed_form.hps_sharp(n, k) != (k % n in (0, 1)):
                bad_sharp.append((n, k))
    res.add("closed form == brute force (n <= 12, k <= 200)", 0, len(bad), not bad, "DERIVED")
    res.add("hps_sharp == [k mod n in {0,1}]", 0, len(bad_sharp), not bad_sharp, "CITED")
    res.details = {"mismatches": bad[:10]}
    return res


@_timed
def criterion_3() -> CriterionResult:
    res = CriterionResult(3, "uniform disk spectrum at N = 64")
    t0 = time.perf_counter()
    spec = disk_steklov.steklov_solve(disk_steklov.BoundaryDensity.uniform(1.0), 64)
    elapsed = time.perf_counter() - t0
    err = max(abs(spec.normalized[k] - 2 * PI * ((k + 1) // 2)) for k in range(21))
    res.add("max_{k<=20} |sigma_bar_k - 2 pi floor((k+1)/2)|", 1e-8, err, err <= 1e-8, "CITED")
    res.budget("runtime", 1, elapsed)
    return res


def blaschke_battery(count: int = 12, seed: int = SEED) -> list[blaschke.BlaschkeProduct]:
    """Seeded multi-factor products of degree <= 5 with zeros in |a| <= 0.6."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        s = int(rng.integers(2, 4))
        mults = rng.integers(1, 3, size=s)
        if mults.sum() > 5:
            continue
        zeros = 0.6 * np.sqrt(rng.random(s)) * np.exp(2j * PI * rng.random(s))
        out.append(blaschke.BlaschkeProduct.from_zeros(zeros, [int(m) for m in mults]))
    return out


@_timed
def criterion_4(part: str = "all") -> CriterionResult:
    """Index of z^d exactly, and the combinatorial lower bound on multi-factor products."""
    res = CriterionResult(4, "Blaschke index: z^d exact; multi-factor lower bound")
    rows = []
    if part in ("all", "power"):
        for d in range(1, 7):
            rep = disk_steklov.q_form_index(blaschke.boundary_density(blaschke.BlaschkeProduct.power(d)), 128, tol=1e-6)
            res.add(f"z^{d}: (index, nullity)", (2 * d - 1, 2), (rep.index, rep.nullity),
                    (rep.index, rep.nullity) == (2 * d - 1, 2), "CITED")
    if part in ("all", "multi"):
        for B in blaschke_battery():
            rep = disk_steklov.q_form_index(blaschke.boundary_density(B), 256, tol=1e-6)
            bound = blaschke.index_lower_bound(B)
            rows.append({"product": str(B), "degree": B.degree, "index": rep.index, "nullity": rep.nullity, "bound": bound})
            res.add(f"{B}: index >= 2 prod(m_i+1) - 3", f">= {bound}", rep.index, rep.index >= bound, "CITED")
    res.details = {"battery": rows}
    return res


@_timed
def criterion_5(part: str = "all") -> CriterionResult:
    res = CriterionResult(5, "sharpness: strict gap for z*phi_a, zero gap for phi_a^m")
    rows = []
    if part in ("all", "strict"):
        for a in (0.3, 0.6, 0.9):
            B = blaschke.BlaschkeProduct.from_zeros([0.0, a])
            rep = blaschke.sharpness_check(B, 512)
            for k, at1, gap in zip(rep.k_list, rep.sigma_bar_at_1, rep.gaps):
                rows.append({"product": str(B), "k": k, "sigma_bar": at1, "gap": gap})
                res.add(f"z*phi_{a}: sigma_bar_{k} = 4 pi", 4 * PI, at1, abs(at1 - 4 * PI) <= 1e-6, "CITED")
                res.add(f"z*phi_{a}: gap at k={k} >= 2 pi", 2 * PI - 1e-6, gap, gap >= 2 * PI - 1e-6, "CITED")
    if part in ("all", "single"):
        for m in (1, 2, 3):
            B = blaschke.BlaschkeProduct.from_zeros([0.5], [m])
            rep = blaschke.sharpness_check(B, 256)
            for k, at1, gap in zip(rep.k_list, rep.sigma_bar_at_1, rep.gaps):
                rows.append({"product": str(B), "k": k, "sigma_bar": at1, "gap": gap})
                res.add(f"phi_0.5^{m}: gap at k={k} is 0", 0.0, gap, abs(gap) <= 1e-8, "DERIVED")
    res.details = {"rows": rows}
    return res


@_timed
def criterion_6() -> CriterionResult:
    res = CriterionResult(6, "round sphere spectrum at L = 25")
    t0 = time.perf_counter()
    spec = sphere_laplace.laplace_solve(sphere_laplace.SphereDensity.constant(2.0), 25)
    elapsed = time.perf_counter() - t0
    err = max(abs(spec.normalized[k] - 4 * PI * math.isqrt(k) * (math.isqrt(k) + 1)) for k in range(36))
    res.add("max_{k<=35} |lambda_bar_k - 4 pi m(m+1)|", 1e-6, err, err <= 1e-6, "TRIVIAL")
    res.budget("runtime", 30, elapsed)
    return res


@_timed
def criterion_7() -> CriterionResult:
    res = CriterionResult(7, "harmonic-map index and nullity")
    t0 = time.perf_counter()
    found = {}
    cases = [("Phi_1", rational_maps.octahedral_map(), (30, 36), (7, 3)),
             ("Phi_2", rational_maps.icosahedral_map(), (36, 42), (13, 3))]
    for name, R, Ls, expected in cases:
        dens = sphere_laplace.rational_map_density(R)
        for L in Ls:
            rep = sphere_laplace.index_nullity(dens, L, tol=0.02)
            found[(name, L)] = (rep.index, rep.nullity)
            res.add(f"{name} at L={L}", expected, (rep.index, rep.nullity), (rep.index, rep.nullity) == expected, "CITED")
    for m in range(1, 5):
        rep = sphere_laplace.index_nullity(sphere_laplace.spherical_harmonic_density(m), 12, tol=0.02)
        res.add(f"harmonic density m={m}", (m * m, 2 * m + 1), (rep.index, rep.nullity),
                (rep.index, rep.nullity) == (m * m, 2 * m + 1), "CITED")
    elapsed = time.perf_counter() - t0
    res.budget("runtime", 120, elapsed)
    res.details = {"counts": {f"{k[0]}@L{k[1]}": v for k, v in found.items()}}
    return res


@_timed
def criterion_8(sphere_nullities: dict | None = None) -> CriterionResult:
    res = CriterionResult(8, "Wronskians exact; dPsi kernel trivial; nullity agreement")
    P = rational_maps.poly
    w1 = rational_maps.wronskian(P(1, 0, 0, 0, 1), P(0, 0, 1))
    res.add("R(z^4+1, z^2) = 2z^5 - 2z", "2z^5 - 2z", str(w1), w1 == P(0, -2, 0, 0, 0, 2), "CITED")
    w2 = rational_maps.wronskian(P(0, 0, -7, 0, 0, 0, 0, 1), P(1, 0, 0, 0, 0, 7))
    target = P(0, -1, 0, 0, 0, 0, 11, 0, 0, 0, 0, 1) * 14
    res.add("R(z^7-7z^2, 7z^5+1) = 14(z^11+11z^6-z)", str(target), str(w2), w2 == target, "CITED")
    maps = {"Phi_1": rational_maps.octahedral_map(), "Phi_2": rational_maps.icosahedral_map(), "identity": rational_maps.identity_map()}
    for name, R in maps.items():
        k = rational_maps.dpsi_kernel(R)
        res.add(f"{name}: kernel_dim, nullity", (0, 3), (k["kernel_dim"], k["nullity"]), (k["kernel_dim"], k["nullity"]) == (0, 3), "CITED")
        exact = rational_maps.dpsi_kernel_exact(R)
        res.add(f"{name}: exact kernel_dim", 0, exact, exact == 0, "DERIVED")
    if sphere_nullities is None:
        sphere_nullities = {
            "Phi_1": sphere_laplace.index_nullity(sphere_laplace.rational_map_density(maps["Phi_1"]), 30).nullity,
            "Phi_2": sphere_laplace.index_nullity(sphere_laplace.rational_map_density(maps["Phi_2"]), 36).nullity,
        }
    sphere_nullities.setdefault(
        "identity", sphere_laplace.index_nullity(sphere_laplace.rational_map_density(maps["identity"]), 8).nullity
    )
    for name in maps:
        alg = rational_maps.dpsi_kernel(maps[name])["nullity"]
        res.add(f"{name}: algebraic nullity == spectral nullity", alg, sphere_nullities[name], alg == sphere_nullities[name], "DERIVED")
    return res


def random_maps(count: int = 3, degree: int = 3, seed: int = SEED) -> list[rational_maps.RationalMap]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        c = rng.standard_normal((2, degree + 1)) + 1j * rng.standard_normal((2, degree + 1))
        out.append(rational_maps.RationalMap(rational_maps.ComplexPolynomial(c[0]), rational_maps.ComplexPolynomial(c[1])))
    return out


@_timed
def criterion_9() -> CriterionResult:
    res = CriterionResult(9, "mass identities for map and bump densities")
    battery = [("identity", rational_maps.identity_map()), ("Phi_1", rational_maps.octahedral_map()),
               ("Phi_2", rational_maps.icosahedral_map())]
    battery += [(f"z^{d}", rational_maps.power_map(d)) for d in range(2, 8)]
    battery += [(f"random deg-3 #{i}", R) for i, R in enumerate(random_maps())]
    for name, R in battery:
        mass = sphere_laplace.rational_map_density(R, mass=1.0).integrate(200)
        rel = abs(mass / (8 * PI * R.degree) - 1)
        res.add(f"{name}: mass / 8 pi d - 1", 1e-6, rel, rel <= 1e-6, "CITED")
    t_orbit = symmetry.orbit(symmetry.build_group(symmetry.GroupSpec.parse("T")), np.ones(3) / math.sqrt(3)).points
    o_orbit = symmetry.orbit(symmetry.build_group(symmetry.GroupSpec.parse("O")), np.array([0.0, 0.0, 1.0])).points
    bumps = [("north, eps=1", [[0, 0, 1]], 1.0), ("T vertices, eps=0.4", t_orbit, 0.4),
             ("T vertices, eps=0.1", t_orbit, 0.1), ("O vertices, eps=0.2", o_orbit, 0.2)]
    for name, pts, eps in bumps:
        dens = sphere_laplace.bump_density(pts, eps)
        mass = dens.integrate(400)
        rel = abs(mass / (8 * PI * len(pts)) - 1)
        res.add(f"bumps {name}: mass / 8 pi n - 1", 1e-8, rel, rel <= 1e-8, "TRIVIAL")
    return res


@_timed
def criterion_10() -> CriterionResult:
    res = CriterionResult(10, "McKay decompositions, invariant plane, characters")
    stated = [("2O", 4, [3, 2]), ("2T", 4, [3, 1, 1]), ("2I", 4, [5]), ("2I", 6, [4, 3]), ("2I", 7, [6, 2])]
    for g, k, dims in stated:
        dec = mckay.symmetric_power_decomposition(mckay.mckay_graph(g), k)
        res.add(f"{g}: S^{k} dims", dims, dec.dims(), dec.dims() == sorted(dims, reverse=True), "CITED")
    bad = [(g, k) for g in mckay.GRAPHS for k in range(41)
           if int(mckay.symmetric_power_decomposition(mckay.GRAPHS[g], k).multiplicities @ mckay.GRAPHS[g].dims) != k + 1]
    res.add("dimension identity k <= 40", 0, len(bad), not bad, "TRIVIAL")
    pv = mckay.polynomial_vector
    plane = [pv({(7, 0): 1, (2, 5): -7}, 7), pv({(0, 7): 1, (5, 2): 7}, 7)]
    swapped = [pv({(0, 7): 1, (5, 2): -7}, 7), pv({(7, 0): 1, (2, 5): 7}, 7)]
    r1 = mckay.verify_invariant_subspace(mckay.binary_generators("2I"), 7, plane)["residual"]
    r2 = mckay.verify_invariant_subspace(mckay.binary_generators("2I"), 7, swapped)["residual"]
    res.add("2I S^7 invariant 2-plane residual (either orientation)", 1e-10, min(r1, r2), min(r1, r2) <= 1e-10, "CITED")
    r3 = mckay.verify_invariant_subspace(mckay.binary_generators("2O"), 4, [pv({(4, 0): 1, (0, 4): 1}, 4), pv({(2, 2): 1}, 4)])["residual"]
    res.add("2O S^4 invariant 2-plane residual", 1e-10, r3, r3 <= 1e-10, "CITED")
    worst = 0.0
    for g in mckay.GRAPHS:
        for k in range(13):
            c = mckay.character_check(g, k)
            worst = max(worst, c["trace_error"], abs(c["invariant_count"] - c["expected_invariants"]),
                        abs(c["character_norm"] - c["expected_norm"]))
    res.add("character cross-check k <= 12", 1e-10, worst, worst <= 1e-10, "DERIVED")
    res.details = {"plane_residuals": [r1, r2], "orientation": "as stated" if r1 <= r2 else "v0, v1 swapped"}
    return res


@_timed
def criterion_11() -> CriterionResult:
    res = CriterionResult(11, "admissible (m, d) lists")
    for fam, lists in ADMISSIBLE_LISTS.items():
        for member in FAMILY_MEMBERS[fam]:
            for k, expected in lists.items():
                got = rational_maps.admissible_pairs(member, k)
                res.add(f"{member}, k={k}", sorted(expected), sorted(got), sorted(got) == sorted(expected), "CITED")
    return res


@_timed
def criterion_12(part: str = "all", N: int = 512) -> CriterionResult:
    res = CriterionResult(12, "gluing sweeps toward the bubbled values")
    t0 = time.perf_counter()
    sweeps = {}
    if part in ("all", "disk", "disk-monotone", "disk-limit"):
        ts = disk_steklov.glue_t_values(0.995, 20)
        for n, k, target in ((2, 3, 6 * PI), (3, 5, 8 * PI)):
            sweep = disk_steklov.glue_sweep(n, k, ts, N=N)
            vals = np.array([v for _, v in sweep])
            sweeps[f"n={n},k={k}"] = sweep
            worst = float(np.min(np.diff(vals)))
            if part in ("all", "disk", "disk-monotone"):
                res.add(f"(n={n}, k={k}) monotone", ">= -1e-6", worst, worst >= -1e-6, "DERIVED")
            rel = abs(vals[-1] / target - 1)
            if part in ("all", "disk", "disk-limit"):
                res.add(f"(n={n}, k={k}) within 2% of target at t=0.995", 0.02, rel, rel <= 0.02, "DERIVED")
        elapsed = time.perf_counter() - t0
        if part in ("all", "disk"):
            res.budget("disk sweeps runtime", 60.0, elapsed)
    if part in ("all", "sphere"):
        pts = symmetry.orbit(symmetry.build_group(symmetry.GroupSpec.parse("T")), np.ones(3) / math.sqrt(3)).points
        lam = []
        for eps in (0.4, 0.2, 0.1):
            spec = sphere_laplace.laplace_solve(sphere_laplace.bump_density(pts, eps), 40, n_eigs=8)
            lam.append(float(spec.normalized[4]))
        sweeps["T vertex bumps"] = list(zip((0.4, 0.2, 0.1), lam))
        res.add("T bumps: lambda_bar_4 increasing as eps decreases", "increasing", lam, lam[0] < lam[1] < lam[2], "DERIVED")
        rel = abs(lam[-1] / (32 * PI) - 1)
        res.add("T bumps: lambda_bar_4 within 10% of 32 pi at eps=0.1", 0.10, rel, rel <= 0.10, "DERIVED")
    res.details = {"sweeps": sweeps}
    return res


@_timed
def criterion_13(iterations: int = 300) -> CriterionResult:
    res = CriterionResult(13, "maximizer reaches attainable suprema; invariants on every iterate")
    runs = {}
    for k, n_sym, target in ((1, 1, 2 * PI), (2, 4, 2 * PI)):
        _, best, trace = disk_steklov.maximize_density(k, n_sym=n_sym, cap=10.0, iterations=iterations, seed=SEED)
        runs[f"k={k},n_sym={n_sym}"] = best
        rel = abs(best / target - 1)
        res.add(f"(k={k}, n_sym={n_sym}) within 1% of 2 pi", 0.01, rel, rel <= 0.01, "DERIVED")
        res.add(f"(k={k}, n_sym={n_sym}) cap respected", 10.0, max(trace.max_density), max(trace.max_density) <= 10.0, "TRIVIAL")
        res.add(f"(k={k}, n_sym={n_sym}) symmetry defect", 1e-10, max(trace.symmetry_defect), max(trace.symmetry_defect) <= 1e-10, "TRIVIAL")
        res.add(f"(k={k}, n_sym={n_sym}) mass defect", 1e-12, max(trace.mass_defect), max(trace.mass_defect) <= 1e-12, "TRIVIAL")
    # unattained suprema: reported only
    for k, n_sym in ((2, 2), (3, 1)):
        _, best, _ = disk_steklov.maximize_density(k, n_sym=n_sym, cap=10.0, iterations=iterations, seed=SEED)
        runs[f"k={k},n_sym={n_sym} (reported)"] = best
    res.details = {"best_over_pi": {key: v / PI for key, v in runs.items()}}
    return res


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 14)}


def run_all(numbers=None) -> list[CriterionResult]:
    numbers = sorted(CRITERIA) if numbers is None else sorted(numbers)
    out = []
    nullities = None
    for n in numbers:
        if n == 8 and nullities is not None:
            out.append(criterion_8(nullities))
            continue
        r = CRITERIA[n]()
        if n == 7:
            c = r.details["counts"]
            nullities = {"Phi_1": c["Phi_1@L30"][1], "Phi_2": c["Phi_2@L36"][1]}
        out.append(r)
    return out
