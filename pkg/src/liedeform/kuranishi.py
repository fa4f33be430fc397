"""Obstruction classes and exact expansion identities for deformations of
brackets, homomorphisms and subalgebras.

Sign conventions follow the differential implemented in `cecomplex`:
with J the Jacobiator, the exact quartic expansion is

  J(mu + t xi + 1/2 t^2 eta)
    = J(mu) - t d(xi) + t^2 (J(xi) - 1/2 d(eta)) + t^3/2 B(xi,eta) + t^4/4 J(eta)

where B is the polarization of J and d the adjoint-coefficient differential
at the base bracket.  The curvature of a linear map expands with the
opposite orientation, K(rho + t xi) = K(rho) + t d(xi) + t^2 [xi,xi]/2.
Both identities are verified exactly by sampling at integer parameters and
solving for the polynomial coefficients over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .algebras import (BracketCandidate, Homomorphism, LieAlgebra,
                       SubalgebraWitness, ad_matrix, adjoint_rep,
                       pullback_rep, quotient_rep)
from .cecomplex import CEComplex, differential_rows
from .cochains import AltMap, cochain_dim, subsets
from .exactlin import Matrix, invert, solve_particular


class NonCocycleError(ValueError):
    """The supplied direction is not closed, so its class is undefined."""

    def __init__(self, message, defect: AltMap):
        super().__init__(message)
        self.defect = defect


def _as_candidate(mu) -> BracketCandidate:
    if isinstance(mu, LieAlgebra):
        return mu.candidate
    if isinstance(mu, BracketCandidate):
        return mu
    if isinstance(mu, AltMap):
        return BracketCandidate.from_altmap(mu)
    raise TypeError("expected a bracket candidate, Lie algebra or 2-cochain")


def jacobiator(mu) -> AltMap:
    """J(eta)(u,v,w) = eta(eta(u,v),w) + eta(eta(v,w),u) + eta(eta(w,u),v)."""
    cand = _as_candidate(mu)
    n = cand.dim
    values = {t: cand.jacobiator_value(*t) for t in combinations(range(n), 3)}
    return AltMap.from_values(3, n, n, values)


# ---------------------------------------------------------------------------
# exact expansion identities

@dataclass(frozen=True)
class ExpansionReport:
    ok: bool
    max_defect: Fraction
    first_mismatch: str | None
    coefficients: tuple  # AltMap per power of t

    def summary(self) -> str:
        if self.ok:
            return "expansion identity holds exactly"
        return f"expansion mismatch at {self.first_mismatch} (defect {self.max_defect})"


def _interpolate_coefficients(samples, ts):
    """Exact polynomial coefficients from value vectors at integer nodes."""
    deg = len(ts)
    v = Matrix(deg, deg, [[Fraction(t) ** j for j in range(deg)] for t in ts])
    vinv = invert(v)
    length = len(samples[0])
    coeffs = []
    for j in range(deg):
        row = vinv.data[j]
        coeffs.append([sum(row[s] * samples[s][i] for s in range(deg))
                       for i in range(length)])
    return coeffs


def jacobiator_expansion_check(mu, xi: AltMap, eta: AltMap) -> ExpansionReport:
    """Verify the exact quartic expansion of J(mu + t xi + 1/2 t^2 eta).

    All five t-coefficients are matched: J(mu), -d(xi), J(xi) - d(eta)/2,
    B(xi,eta)/2 and J(eta)/4, with B(a,b) = J(a+b) - J(a) - J(b).
    """
    base = _as_candidate(mu)
    n = base.dim
    xi_c = BracketCandidate.from_altmap(xi)
    eta_c = BracketCandidate.from_altmap(eta)
    ts = [-2, -1, 0, 1, 2]
    samples = []
    for t in ts:
        cand = base.add_scaled(xi_c, Fraction(t)).add_scaled(eta_c, Fraction(t * t, 2))
        samples.append(jacobiator(cand).flat())
    coeffs = _interpolate_coefficients(samples, ts)

    e = [[Fraction(1) if a == b else Fraction(0) for b in range(n)] for a in range(n)]
    ad_mats = [ad_matrix(base, e[i]) for i in range(n)]
    d2 = Matrix(cochain_dim(n, 3, n), cochain_dim(n, 2, n),
                differential_rows(2, n, n, base.c, ad_mats))
    d_xi = d2.apply(xi.flat())
    d_eta = d2.apply(eta.flat())
    j_xi = jacobiator(xi_c).flat()
    j_eta = jacobiator(eta_c).flat()
    polar = jacobiator(xi_c.add_scaled(eta_c, 1)).flat()
    b_xi_eta = [p - a - b for p, a, b in zip(polar, j_xi, j_eta)]

    expected = [
        ("t^0: J(mu)", jacobiator(base).flat()),
        ("t^1: -d(xi)", [-x for x in d_xi]),
        ("t^2: J(xi) - d(eta)/2", [a - Fraction(1, 2) * b for a, b in zip(j_xi, d_eta)]),
        ("t^3: B(xi,eta)/2", [Fraction(1, 2) * x for x in b_xi_eta]),
        ("t^4: J(eta)/4", [Fraction(1, 4) * x for x in j_eta]),
    ]
    max_defect = Fraction(0)
    first = None
    alt = []
    for (label, want), got in zip(expected, coeffs):
        diff = max((abs(a - b) for a, b in zip(got, want)), default=Fraction(0))
        if diff > max_defect:
            max_defect = diff
        if diff != 0 and first is None:
            first = label
        alt.append(AltMap.from_flat(3, n, n, got))
    return ExpansionReport(ok=first is None, max_defect=max_defect,
                           first_mismatch=first, coefficients=tuple(alt))


def curvature_expansion_check(rho: Homomorphism, xi_matrix: Matrix) -> ExpansionReport:
    """Verify K(rho + t xi) = K(rho) + t d(xi) + t^2 [xi,xi]/2 exactly.

    Holds for arbitrary linear maps rho; d is built from ad(rho(.)) without
    assuming rho is a homomorphism.
    """
    h, g = rho.source, rho.target
    kh, ng = h.dim, g.dim
    if xi_matrix.rows != ng or xi_matrix.cols != kh:
        raise ValueError("direction matrix has wrong shape")

    def curv_flat(mat: Matrix):
        vals = []
        for (i, j) in combinations(range(kh), 2):
            lhs = g.bracket(mat.column(i), mat.column(j))
            rhs = mat.apply(h.basis_bracket(i, j))
            vals.extend(a - b for a, b in zip(lhs, rhs))
        return vals

    ts = [-1, 0, 1]
    samples = []
    for t in ts:
        m = Matrix(ng, kh, [[rho.matrix.data[a][b] + t * xi_matrix.data[a][b]
                             for b in range(kh)] for a in range(ng)])
        samples.append(curv_flat(m))
    coeffs = _interpolate_coefficients(samples, ts)

    mats = [ad_matrix(g.candidate, rho.image_of_basis(j)) for j in range(kh)]
    d1 = Matrix(cochain_dim(kh, 2, ng), cochain_dim(kh, 1, ng),
                differential_rows(1, kh, ng, h.candidate.c, mats))
    xi_flat = []
    for j in range(kh):
        xi_flat.extend(xi_matrix.column(j))
    d_xi = d1.apply(xi_flat)
    half_sq = []
    for (i, j) in combinations(range(kh), 2):
        half_sq.extend(g.bracket(xi_matrix.column(i), xi_matrix.column(j)))

    expected = [
        ("t^0: K(rho)", curv_flat(rho.matrix)),
        ("t^1: d(xi)", d_xi),
        ("t^2: [xi,xi]/2", half_sq),
    ]
    max_defect = Fraction(0)
    first = None
    alt = []
    for (label, want), got in zip(expected, coeffs):
        diff = max((abs(a - b) for a, b in zip(got, want)), default=Fraction(0))
        if diff > max_defect:
            max_defect = diff
        if diff != 0 and first is None:
            first = label
        alt.append(AltMap.from_flat(2, kh, ng, got))
    return ExpansionReport(ok=first is None, max_defect=max_defect,
                           first_mismatch=first, coefficients=tuple(alt))


# ---------------------------------------------------------------------------
# obstruction classes

@dataclass(frozen=True)
class ObstructionClass:
    kind: str
    representative: AltMap
    is_zero_in_h: bool
    primitive: AltMap | None

    @property
    def degree(self) -> int:
        return self.representative.degree

    def to_json_dict(self) -> dict:
        rep = [{"subset": list(s), "carrier": a, "value": str(x)}
               for (s, a, x) in self.representative.nonzero_entries()]
        out = {"kind": self.kind, "representative": rep,
               "vanishes": self.is_zero_in_h}
        if self.primitive is not None:
            out["primitive"] = [{"subset": list(s), "carrier": a, "value": str(x)}
                                for (s, a, x) in self.primitive.nonzero_entries()]
        return out


def _class_against(cx: CEComplex, degree: int, rep_flat) -> tuple:
    primitive = solve_particular(cx.d(degree - 1), rep_flat)
    if primitive is None:
        return False, None
    return True, AltMap.from_flat(degree - 1, cx.n, cx.carrier_dim, primitive)


def kuranishi_bracket(g: LieAlgebra, xi: AltMap) -> ObstructionClass:
    """Second-order obstruction of a bracket direction: the class of J(xi)
    against the coboundaries in degree three."""
    cx = CEComplex(adjoint_rep(g))
    defect = cx.apply_d(xi)
    if not defect.is_zero():
        raise NonCocycleError("direction is not a 2-cocycle", defect)
    rep = jacobiator(BracketCandidate.from_altmap(xi))
    closed = cx.d(3).apply(rep.flat())
    assert all(x == 0 for x in closed), "J(xi) failed to be closed"
    vanishes, primitive = _class_against(cx, 3, rep.flat())
    return ObstructionClass("bracket", rep, vanishes, primitive)


def kuranishi_hom(rho: Homomorphism, xi: AltMap) -> ObstructionClass:
    """Obstruction of a homomorphism direction xi in Z^1(h, g): the class of
    (u,v) -> [xi(u), xi(v)] against the degree-two coboundaries."""
    cx = CEComplex(pullback_rep(rho))
    h, g = rho.source, rho.target
    if (xi.degree, xi.domain_dim, xi.carrier_dim) != (1, h.dim, g.dim):
        raise ValueError("direction must be a 1-cochain on the source with "
                         "values in the target")
    defect = cx.apply_d(xi)
    if not defect.is_zero():
        raise NonCocycleError("direction is not a 1-cocycle", defect)
    values = {}
    for (i, j) in combinations(range(h.dim), 2):
        values[(i, j)] = g.bracket(xi.value((i,)), xi.value((j,)))
    rep = AltMap.from_values(2, h.dim, g.dim, values)
    closed = cx.d(2).apply(rep.flat())
    assert all(x == 0 for x in closed), "[xi,xi]/2 failed to be closed"
    vanishes, primitive = _class_against(cx, 2, rep.flat())
    return ObstructionClass("hom", rep, vanishes, primitive)


# ---------------------------------------------------------------------------
# splittings and the subalgebra obstruction

@dataclass(frozen=True)
class Splitting:
    """A right inverse of the quotient projection for a subalgebra witness."""

    witness: SubalgebraWitness
    section: Matrix  # ambient_dim x quotient_dim

    def __post_init__(self):
        qc = self.witness.coords
        if self.section.rows != qc.ambient_dim or self.section.cols != qc.dim:
            raise ValueError("section has wrong shape")
        if not qc.projection.mul(self.section) == Matrix.identity(qc.dim):
            raise ValueError("section is not a right inverse of the projection")

    @property
    def omega_s(self) -> Matrix:
        """Projection of the ambient algebra onto the subalgebra along the
        section image: identity minus section o projection."""
        qc = self.witness.coords
        n = qc.ambient_dim
        sp = self.section.mul(qc.projection)
        out = Matrix.identity(n)
        for i in range(n):
            for j in range(n):
                out.data[i][j] -= sp.data[i][j]
        return out


def standard_splitting(w: SubalgebraWitness) -> Splitting:
    """The standard-basis complement section from the quotient coordinates."""
    return Splitting(w, w.coords.section)


def shifted_splitting(sp: Splitting, shift: Matrix) -> Splitting:
    """A new splitting section' = section + basis o shift, with ``shift`` a
    (sub_dim x quotient_dim) matrix into subalgebra coordinates."""
    w = sp.witness
    if shift.rows != w.dim or shift.cols != w.quotient_dim:
        raise ValueError("shift has wrong shape")
    basis = Matrix.from_columns([w.basis_vector(t) for t in range(w.dim)],
                                rows=w.ambient.dim)
    add = basis.mul(shift)
    sec = Matrix(sp.section.rows, sp.section.cols,
                 [[sp.section.data[i][j] + add.data[i][j]
                   for j in range(sp.section.cols)] for i in range(sp.section.rows)])
    return Splitting(w, sec)


def eta_matrix(eta: AltMap) -> Matrix:
    """1-cochain as a matrix, columns = values on the domain basis."""
    if eta.degree != 1:
        raise ValueError("need a 1-cochain")
    return Matrix.from_columns([eta.value((i,)) for i in range(eta.domain_dim)],
                               rows=eta.carrier_dim)


def matrix_as_one_cochain(m: Matrix) -> AltMap:
    flat = []
    for j in range(m.cols):
        flat.extend(m.column(j))
    return AltMap.from_flat(1, m.cols, m.rows, flat)


def omega_sigma(sp: Splitting, eta: AltMap) -> AltMap:
    """delta(section o eta) computed in the ambient-valued complex, certified
    to take values in the subalgebra and returned in its coordinates.

    Requires eta in Z^1(h, g/h); for non-cocycles the values provably leave
    the subalgebra and the certification fails.
    """
    w = sp.witness
    qc = w.coords
    kh, q, n = w.dim, w.quotient_dim, w.ambient.dim
    if (eta.degree, eta.domain_dim, eta.carrier_dim) != (1, kh, q):
        raise ValueError("eta must be a 1-cochain on the subalgebra with "
                         "values in the quotient")
    quot_cx = CEComplex(quotient_rep(w))
    defect = quot_cx.apply_d(eta)
    if not defect.is_zero():
        raise NonCocycleError("eta is not a cocycle; delta(section o eta) "
                              "does not take values in the subalgebra", defect)
    sub_alg = w.as_subalgebra()
    incl = Homomorphism(sub_alg, w.ambient,
                        Matrix.from_columns([w.basis_vector(t) for t in range(kh)],
                                            rows=n), name="incl")
    amb_cx = CEComplex(pullback_rep(incl))
    lift_flat = []
    em = eta_matrix(eta)
    for i in range(kh):
        lift_flat.extend(sp.section.apply(em.column(i)))
    dval = amb_cx.d(1).apply(lift_flat)
    values = {}
    pairs = list(combinations(range(kh), 2))
    for p, pair in enumerate(pairs):
        block = dval[p * n:(p + 1) * n]
        certify = qc.projection.apply(block)
        if any(x != 0 for x in certify):
            raise AssertionError("omega_sigma value left the subalgebra")
        values[pair] = qc.to_sub_coords(block)
    out = AltMap.from_values(2, kh, kh, values)
    sub_cx = CEComplex(adjoint_rep(sub_alg))
    closed = sub_cx.d(2).apply(out.flat())
    assert all(x == 0 for x in closed), "omega_sigma value is not closed"
    return out


def kuranishi_sub(sp: Splitting, eta: AltMap) -> ObstructionClass:
    """Obstruction of a subalgebra direction eta in Z^1(h, g/h):
    (u,v) -> pi[section(eta(u)), section(eta(v))] - eta(omega_sigma(eta)(u,v)),
    classed against the degree-two coboundaries of the quotient system."""
    w = sp.witness
    qc = w.coords
    kh = w.dim
    quot_cx = CEComplex(quotient_rep(w))
    cocycle_defect = quot_cx.apply_d(eta)
    if not cocycle_defect.is_zero():
        raise NonCocycleError("eta is not a 1-cocycle", cocycle_defect)
    omega = omega_sigma(sp, eta)
    em = eta_matrix(eta)
    values = {}
    for (i, j) in combinations(range(kh), 2):
        a = sp.section.apply(em.column(i))
        b = sp.section.apply(em.column(j))
        term1 = qc.projection.apply(w.ambient.bracket(a, b))
        wv = omega.value((i, j))
        eta_of_w = em.apply(wv)
        values[(i, j)] = [x - y for x, y in zip(term1, eta_of_w)]
    rep = AltMap.from_values(2, kh, w.quotient_dim, values)
    closed = quot_cx.d(2).apply(rep.flat())
    assert all(x == 0 for x in closed), "subalgebra obstruction is not closed"
    vanishes, primitive = _class_against(quot_cx, 2, rep.flat())
    return ObstructionClass("sub", rep, vanishes, primitive)


@dataclass(frozen=True)
class SplittingComparison:
    ok: bool
    max_defect: Fraction
    difference: AltMap
    coboundary: AltMap

    def summary(self) -> str:
        if self.ok:
            return ("splitting change shifts the representative by the "
                    "coboundary of eta o (s'-s) o eta exactly")
        return f"splitting comparison failed (defect {self.max_defect})"


def splitting_independence_check(sp1: Splitting, sp2: Splitting,
                                 eta: AltMap) -> SplittingComparison:
    """Verify Phi_s1(eta) - Phi_s2(eta) = delta(eta o d o eta) exactly, where
    d = (s2 - s1) read as a map from the quotient into the subalgebra.

    The composite types as quotient -> sub -> quotient through eta's domain,
    giving a 1-cochain on the subalgebra with quotient values.
    """
    if sp1.witness is not sp2.witness and sp1.witness != sp2.witness:
        raise ValueError("splittings must share a witness")
    w = sp1.witness
    qc = w.coords
    phi1 = kuranishi_sub(sp1, eta).representative
    phi2 = kuranishi_sub(sp2, eta).representative
    diff = phi1.sub(phi2)
    # d = s2 - s1 has image inside the subalgebra; read it in sub coordinates
    shift_cols = []
    for b in range(w.quotient_dim):
        col = [sp2.section.data[i][b] - sp1.section.data[i][b]
               for i in range(w.ambient.dim)]
        if any(x != 0 for x in qc.projection.apply(col)):
            raise AssertionError("section difference left the subalgebra")
        shift_cols.append(qc.to_sub_coords(col))
    shift = Matrix.from_columns(shift_cols, rows=w.dim)
    em = eta_matrix(eta)
    psi = em.mul(shift).mul(em)  # quotient values on the subalgebra basis
    quot_cx = CEComplex(quotient_rep(w))
    cob = quot_cx.apply_d(matrix_as_one_cochain(psi))
    mismatch = diff.sub(cob)
    return SplittingComparison(ok=mismatch.is_zero(),
                               max_defect=mismatch.sup_abs(),
                               difference=diff, coboundary=cob)
