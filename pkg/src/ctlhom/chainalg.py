"""Exact chain-level algebra: boundary matrices, homology presentations,
and the four (co)homology theories of finite complexes and exhaustions.

All computation happens over the integers via Smith normal form; rational
and finite-cyclic coefficients are derived afterwards from the integral
answer in adjacent degrees, never by redoing linear algebra over a field.

For an exhaustion the four theories are limits or colimits over the stage
complexes:

* ordinary homology       — colimit along inclusions,
* Borel–Moore homology    — limit along projections of the stage-relative
                            complexes (chains modulo the frontier),
* ordinary cohomology     — limit along restrictions (duals of inclusions),
* compact-support         — colimit along extensions by zero (duals of the
  cohomology                 projections).

Stabilization is certified by watching transition maps become isomorphisms
for a window of consecutive stages; a system that keeps moving raises
NonStabilizationError with its history attached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .snf import IntMatrix, MatrixError, smith_normal_form
from .sset import (
    Cell,
    FiniteSimplicialSet,
    SimplicialError,
    SimplicialMap,
    Simplex,
    all_simplices,
    apply_ordinal_map,
    is_locally_finite,
)
from . import delta
from .ctlset import ControlError


class CoefficientError(ValueError):
    pass


class NonStabilizationError(RuntimeError):
    """A limit/colimit system failed to settle within the probed depth."""

    def __init__(self, message, theory=None, degree=None, history=None):
        super().__init__(message)
        self.theory = theory
        self.degree = degree
        self.history = history or []


# --------------------------------------------------------------------------
# coefficients

@dataclass(frozen=True)
class Coefficients:
    """Coefficient ring: the integers, a finite cyclic ring, or the
    rationals.  Parsed from the CLI spellings z, z/M, q."""

    kind: str  # "z" | "zmod" | "q"
    modulus: int | None = None

    def __post_init__(self):
        if self.kind not in ("z", "zmod", "q"):
            raise CoefficientError(f"unknown coefficient kind {self.kind!r}")
        if self.kind == "zmod":
            if self.modulus is None or self.modulus < 2:
                raise CoefficientError("cyclic coefficients need a modulus >= 2")
        elif self.modulus is not None:
            raise CoefficientError("only z/M takes a modulus")

    @property
    def label(self) -> str:
        if self.kind == "z":
            return "Z"
        if self.kind == "q":
            return "Q"
        return f"Z/{self.modulus}"

    def __repr__(self):
        return f"Coefficients({self.label})"


INTEGER = Coefficients("z")
RATIONAL = Coefficients("q")


def parse_coefficients(text: str) -> Coefficients:
    t = text.strip().lower()
    if t == "z":
        return INTEGER
    if t == "q":
        return RATIONAL
    if t.startswith("z/"):
        tail = t[2:]
        if not tail.isdigit():
            raise CoefficientError(f"bad modulus in {text!r}")
        return Coefficients("zmod", int(tail))
    raise CoefficientError(f"cannot parse coefficients {text!r} (use z, z/M, or q)")


# --------------------------------------------------------------------------
# finitely generated abelian groups

@dataclass(frozen=True)
class AbelianGroup:
    """Invariant-factor form: free rank plus a divisibility chain of torsion
    orders (each >= 2, each dividing the next).

    Under z/M or q coefficients the same shape describes a module: free_rank
    counts full-ring summands and torsion the proper cyclic parts.
    """

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        torsion = tuple(int(t) for t in self.torsion)
        object.__setattr__(self, "torsion", torsion)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for t in torsion:
            if t < 2:
                raise ValueError(f"torsion order {t} < 2")
        for a, b in zip(torsion, torsion[1:]):
            if b % a != 0:
                raise ValueError(f"torsion {torsion} is not a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __repr__(self):
        return f"AbelianGroup({render_group(self, INTEGER)})"


TRIVIAL_GROUP = AbelianGroup(0)


def render_group(g: AbelianGroup, coeff: Coefficients = INTEGER) -> str:
    if g.is_trivial:
        return "0"
    if coeff.kind == "z":
        free_symbol = "Z"
    elif coeff.kind == "q":
        free_symbol = "Q"
    else:
        free_symbol = f"(Z/{coeff.modulus})"
    parts = []
    if g.free_rank == 1:
        parts.append(free_symbol.strip("()") if coeff.kind != "zmod" else free_symbol[1:-1])
    elif g.free_rank > 1:
        parts.append(f"{free_symbol}^{g.free_rank}")
    for t in g.torsion:
        parts.append(f"Z/{t}")
    return " + ".join(parts)


def _prime_powers(n: int) -> dict:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_chain(cyclic_orders) -> tuple:
    """Rebuild the invariant-factor chain of a direct sum of cyclic groups.

    Orders of 1 are dropped; 0 is not allowed here (free parts are tracked
    separately by the callers).
    """
    exponents = {}
    for d in cyclic_orders:
        if d == 1:
            continue
        if d <= 0:
            raise ValueError("cyclic order must be positive")
        for p, e in _prime_powers(d).items():
            exponents.setdefault(p, []).append(e)
    if not exponents:
        return ()
    for v in exponents.values():
        v.sort(reverse=True)
    depth = max(len(v) for v in exponents.values())
    factors = []
    for layer in range(depth):
        f = 1
        for p, v in exponents.items():
            if layer < len(v):
                f *= p ** v[layer]
        factors.append(f)
    factors.reverse()  # smallest first, so each divides the next
    return tuple(factors)


def convert_group(current: AbelianGroup, neighbor: AbelianGroup,
                  coeff: Coefficients) -> AbelianGroup:
    """Coefficients via the universal coefficient splitting.

    ``current`` is the integral group in the requested degree, ``neighbor``
    the integral group whose torsion contributes the Tor term: the degree
    below for homology-kind theories, the degree above for cohomology-kind
    theories (the dualized complex shifts the correction term up).
    """
    if coeff.kind == "z":
        return current
    if coeff.kind == "q":
        return AbelianGroup(current.free_rank)
    m = coeff.modulus
    orders = []
    full = 0
    # tensor part: Z (x) Z/m and Z/e (x) Z/m
    orders.extend([m] * current.free_rank)
    orders.extend(math.gcd(e, m) for e in current.torsion)
    # Tor part: Tor(Z, Z/m) = 0, Tor(Z/e, Z/m) = Z/gcd(e, m)
    orders.extend(math.gcd(e, m) for e in neighbor.torsion)
    chain = list(invariant_chain(orders))
    while chain and chain[-1] == m:
        chain.pop()
        full += 1
    return AbelianGroup(full, tuple(chain))


# --------------------------------------------------------------------------
# chain complexes of finite simplicial sets

def chain_basis(X: FiniteSimplicialSet, n: int) -> tuple:
    """Normalized basis: the nondegenerate n-cells."""
    return X.cells(n)


def boundary_matrix(X: FiniteSimplicialSet, n: int,
                    excluded: frozenset = frozenset()) -> IntMatrix:
    """The boundary C_n -> C_{n-1} on normalized chains, as a matrix with
    one column per n-cell.  Degenerate faces vanish; cells in ``excluded``
    are dropped from both the basis and the targets (relative complex)."""
    source = [c for c in X.cells(n) if c not in excluded]
    target = [c for c in X.cells(n - 1) if c not in excluded]
    if n <= 0:
        return IntMatrix.zeros(len(target), len(source))
    index = {c: i for i, c in enumerate(target)}
    cols = []
    for cell in source:
        col = [0] * len(target)
        for i in range(n + 1):
            fv = X.face(cell, i)
            if not fv.is_nondegenerate:
                continue
            at = index.get(fv.core)
            if at is None:
                continue
            col[at] += -1 if i % 2 else 1
        cols.append(col)
    return IntMatrix(
        len(target), len(source),
        tuple(tuple(col[r] for col in cols) for r in range(len(target))),
    )


def unnormalized_boundary_matrix(X: FiniteSimplicialSet, n: int) -> IntMatrix:
    """The boundary on *all* n-simplices, degenerate ones included."""
    source = all_simplices(X, n)
    if n <= 0:
        return IntMatrix.zeros(0, len(source))
    target = all_simplices(X, n - 1)
    index = {s: i for i, s in enumerate(target)}
    cols = []
    for x in source:
        col = [0] * len(target)
        for i in range(n + 1):
            fv = apply_ordinal_map(X, x, delta.coface(n - 1, i))
            col[index[fv]] += -1 if i % 2 else 1
        cols.append(col)
    return IntMatrix(
        len(target), len(source),
        tuple(tuple(col[r] for col in cols) for r in range(len(target))),
    )


# --------------------------------------------------------------------------
# homology presentations

@dataclass
class HomologyPresentation:
    """H = ker(boundary_in) / im(boundary_out), with explicit generators.

    ``orders[i]`` is 0 for a free generator and the torsion order (>= 2)
    otherwise; ``generators[i]`` is the representing cycle in the chain
    basis.  ``reduce`` sends any cycle to its coordinates in this
    presentation (torsion coordinates already reduced mod their order).
    """

    group: AbelianGroup
    orders: tuple
    generators: tuple
    basis_size: int
    _boundary_in: IntMatrix = field(repr=False)
    _v_inv: IntMatrix = field(repr=False)
    _rank: int = field(repr=False)
    _u_y: IntMatrix = field(repr=False)
    _kept: tuple = field(repr=False)

    def reduce(self, vector) -> tuple:
        vec = tuple(int(v) for v in vector)
        if len(vec) != self.basis_size:
            raise MatrixError(
                f"cycle has length {len(vec)}, basis has {self.basis_size}"
            )
        y = self._v_inv.apply(vec)
        if any(y[i] != 0 for i in range(self._rank)):
            raise MatrixError("vector is not a cycle")
        z = self._u_y.apply(y[self._rank:])
        out = []
        for pos in self._kept:
            order = self.orders[len(out)]
            out.append(z[pos] % order if order >= 2 else z[pos])
        return tuple(out)


def present_homology(boundary_in: IntMatrix, boundary_out: IntMatrix) -> HomologyPresentation:
    """Present ker(boundary_in)/im(boundary_out) with generators.

    ``boundary_in`` consumes the degree (one column per basis element);
    ``boundary_out`` produces into it.  Raises MatrixError if the two do not
    compose to zero.
    """
    if boundary_in.cols != boundary_out.rows:
        raise MatrixError(
            f"boundary shapes disagree: in-cols {boundary_in.cols}, out-rows {boundary_out.rows}"
        )
    dec = smith_normal_form(boundary_in)
    r = dec.rank
    k = boundary_in.cols - r
    y_full = dec.v_inv @ boundary_out
    for i in range(r):
        if any(y_full[i, j] != 0 for j in range(y_full.cols)):
            raise MatrixError("boundaries do not compose to zero")
    relations = y_full.submatrix(range(r, boundary_in.cols), range(y_full.cols))
    dec_y = smith_normal_form(relations)
    orders_all = []
    for i in range(k):
        d = dec_y.diagonal[i, i] if i < min(relations.rows, relations.cols) else 0
        orders_all.append(d)
    kernel = dec.v.submatrix(range(dec.v.rows), range(r, dec.v.cols))
    gen_matrix = kernel @ dec_y.u_inv
    kept = tuple(i for i, d in enumerate(orders_all) if d != 1)
    orders = tuple(orders_all[i] for i in kept)
    torsion = tuple(d for d in orders if d >= 2)
    free_rank = sum(1 for d in orders if d == 0)
    generators = tuple(gen_matrix.col(i) for i in kept)
    # present torsion before free parts is already the SNF order (1s, then
    # growing factors, then 0s); keep it as-is
    return HomologyPresentation(
        group=AbelianGroup(free_rank, torsion),
        orders=orders,
        generators=generators,
        basis_size=boundary_in.cols,
        _boundary_in=boundary_in,
        _v_inv=dec.v_inv,
        _rank=r,
        _u_y=dec_y.u,
        _kept=kept,
    )


def reduced_images(source: HomologyPresentation, target: HomologyPresentation,
                   matrix: IntMatrix) -> list:
    """Images of the source generators under a chain map, in target
    coordinates."""
    return [target.reduce(matrix.apply(g)) for g in source.generators]


def is_surjective_on_classes(target: HomologyPresentation, images) -> bool:
    """Whether classes with the given target coordinates generate the target.

    The target is Z^k modulo its torsion relations; the images generate iff
    the augmented (images | relations) matrix has all k invariant factors
    equal to one.
    """
    k = len(target.orders)
    if k == 0:
        return True
    cols = [tuple(img) for img in images]
    for i, d in enumerate(target.orders):
        if d >= 2:
            cols.append(tuple(d if j == i else 0 for j in range(k)))
    if not cols:
        return False
    m = IntMatrix(k, len(cols), tuple(tuple(c[i] for c in cols) for i in range(k)))
    dec = smith_normal_form(m)
    return dec.rank == k and all(f == 1 for f in dec.invariant_factors)


def is_transition_isomorphism(source: HomologyPresentation,
                              target: HomologyPresentation,
                              matrix: IntMatrix) -> bool:
    """Isomorphism test for a map of finitely generated abelian groups:
    abstract equality plus surjectivity suffices (such groups are Hopfian,
    so a surjective self-shape map is injective)."""
    if source.group != target.group:
        return False
    return is_surjective_on_classes(target, reduced_images(source, target, matrix))


# --------------------------------------------------------------------------
# stage systems

@dataclass
class StageComplex:
    """One truncation's chain data: the stage complex, the basis per degree
    (possibly relative to the frontier), and boundary matrices."""

    complex: FiniteSimplicialSet
    excluded: frozenset
    _bases: dict = field(default_factory=dict)
    _matrices: dict = field(default_factory=dict)

    def basis(self, n: int) -> tuple:
        if n not in self._bases:
            self._bases[n] = tuple(
                c for c in self.complex.cells(n) if c not in self.excluded
            )
        return self._bases[n]

    def boundary(self, n: int) -> IntMatrix:
        if n not in self._matrices:
            self._matrices[n] = boundary_matrix(self.complex, n, self.excluded)
        return self._matrices[n]


def _inclusion_matrix(small: tuple, big: tuple) -> IntMatrix:
    """Basis inclusion as a matrix (rows: big, cols: small)."""
    index = {c: i for i, c in enumerate(big)}
    data = [[0] * len(small) for _ in range(len(big))]
    for j, c in enumerate(small):
        i = index.get(c)
        if i is None:
            raise MatrixError(f"{c} missing from the larger basis")
        data[i][j] = 1
    return IntMatrix(len(big), len(small), tuple(tuple(r) for r in data))


def _projection_matrix(big: tuple, small: tuple) -> IntMatrix:
    """Basis projection as a matrix (rows: small, cols: big); cells outside
    the smaller basis map to zero."""
    index = {c: i for i, c in enumerate(small)}
    data = [[0] * len(big) for _ in range(len(small))]
    for j, c in enumerate(big):
        i = index.get(c)
        if i is not None:
            data[i][j] = 1
    return IntMatrix(len(small), len(big), tuple(tuple(r) for r in data))


def _check_chain_map(matrix_n, matrix_n_minus_1, d_source, d_target, context):
    lhs = d_target @ matrix_n
    rhs = matrix_n_minus_1 @ d_source
    if lhs.data != rhs.data:
        raise MatrixError(f"{context}: transition does not commute with the boundary")


# --------------------------------------------------------------------------
# theory results

@dataclass
class TheoryResult:
    """One theory on one space: groups per degree, with provenance of the
    stabilization when the space was an exhaustion."""

    theory: str
    space: str
    coefficients: Coefficients
    groups: dict
    stabilized_at: dict | None = None
    window: int | None = None
    depth_used: int | None = None
    caveats: list = field(default_factory=list)
    presentations: dict | None = None
    bases: dict | None = None

    def group(self, n: int) -> AbelianGroup:
        return self.groups.get(n, TRIVIAL_GROUP)


THEORY_TAGS = ("H", "H_BM", "H_co", "H_c")


def _dual_pair(stage: StageComplex, n: int):
    """Cochain-side in/out boundaries at degree n: the coboundary out of
    degree n is the transpose of the boundary into it."""
    delta_n = stage.boundary(n + 1).transpose()
    delta_below = stage.boundary(n).transpose()
    return delta_n, delta_below


def _finite_presentations(stage: StageComplex, degrees, dual: bool) -> dict:
    out = {}
    for n in degrees:
        if n < 0:
            continue
        if dual:
            a, b = _dual_pair(stage, n)
            out[n] = present_homology(a, b)
        else:
            out[n] = present_homology(stage.boundary(n), stage.boundary(n + 1))
    return out


def _default_max_degree(space) -> int:
    if isinstance(space, FiniteSimplicialSet):
        return max(space.top_dim, 0)
    return max(space.base.top_dim, space.slab.top_dim, 0)


def _space_label(space, fallback: str) -> str:
    return getattr(space, "name", None) or fallback


def _convert_results(theory, space_label, coeff, integral, cohomological,
                     stabilized_at, window, depth_used, caveats,
                     presentations, bases, max_degree):
    """Apply the coefficient conversion to per-degree integral groups."""
    groups = {}
    stab = dict(stabilized_at) if stabilized_at is not None else None
    for n in range(max_degree + 1):
        current = integral.get(n, TRIVIAL_GROUP)
        neighbor_deg = n + 1 if cohomological else n - 1
        neighbor = integral.get(neighbor_deg, TRIVIAL_GROUP)
        groups[n] = convert_group(current, neighbor, coeff)
        if stab is not None and coeff.kind == "zmod":
            # the Tor term imports the neighbor's stabilization depth
            depths = [d for d in (stabilized_at.get(n), stabilized_at.get(neighbor_deg))
                      if d is not None]
            if depths:
                stab[n] = max(depths)
    if coeff.kind != "z":
        caveats = caveats + [
            f"{coeff.label} groups derived from the integral computation by "
            "the universal coefficient splitting"
        ]
    return TheoryResult(
        theory=theory,
        space=space_label,
        coefficients=coeff,
        groups=groups,
        stabilized_at=stab,
        window=window,
        depth_used=depth_used,
        caveats=caveats,
        presentations=presentations if coeff.kind == "z" else None,
        bases=bases if coeff.kind == "z" else None,
    )


# --------------------------------------------------------------------------
# the four theories

def _stage_for(space, depth: int, relative: bool) -> StageComplex:
    trunc = space.truncate(depth)
    excluded = frozenset(trunc.frontier) if relative else frozenset()
    return StageComplex(trunc.complex, excluded)


def _run_system(space, space_label, theory, coeff, max_degree, window,
                max_depth, relative, dual, forward):
    """Shared limit/colimit engine over exhaustion stages.

    ``relative`` uses stage-relative complexes (chains mod frontier);
    ``dual`` presents cohomology of the stage (co)chain complexes;
    ``forward`` means transitions point from stage i to stage i+1 (colimit
    direction), otherwise from i+1 down to i (limit direction).
    """
    if window < 1:
        raise ValueError("window must be at least 1")
    lf = is_locally_finite(space)
    if not lf.ok:
        raise SimplicialError(
            f"space is not locally finite: {lf.witness}"
        )
    internal_top = max_degree + (1 if coeff.kind == "zmod" else 0)
    degrees = list(range(internal_top + 1))
    stages = {}
    presentations = {}

    def stage(i):
        if i not in stages:
            stages[i] = _stage_for(space, i, relative)
            presentations[i] = _finite_presentations(stages[i], degrees, dual)
        return stages[i]

    def transition(i, n):
        """Chain-level transition matrix in degree n for stage pair (i, i+1)."""
        lo, hi = stage(i), stage(i + 1)
        if relative:
            main = _projection_matrix(hi.basis(n), lo.basis(n))
            below = _projection_matrix(hi.basis(n - 1), lo.basis(n - 1))
            _check_chain_map(main, below, hi.boundary(n), lo.boundary(n),
                             f"{theory} degree {n} stages {i}<-{i + 1}")
        else:
            main = _inclusion_matrix(lo.basis(n), hi.basis(n))
            below = _inclusion_matrix(lo.basis(n - 1), hi.basis(n - 1))
            _check_chain_map(main, below, lo.boundary(n), hi.boundary(n),
                             f"{theory} degree {n} stages {i}->{i + 1}")
        if dual:
            main = main.transpose()
        return main

    def transition_is_iso(i, n):
        m = transition(i, n)
        to_later = forward  # colimit: source is the earlier stage
        if to_later:
            src, tgt = presentations[i][n], presentations[i + 1][n]
        else:
            src, tgt = presentations[i + 1][n], presentations[i][n]
        return is_transition_isomorphism(src, tgt, m)

    stabilized = {}
    quiet = {n: 0 for n in degrees}
    history = {n: [] for n in degrees}
    depth = 0
    stage(0)
    for n in degrees:
        history[n].append(presentations[0][n].group)
    while len(stabilized) < len(degrees):
        if depth + 1 > max_depth:
            missing = [n for n in degrees if n not in stabilized]
            worst = missing[0]
            raise NonStabilizationError(
                f"{theory} degree {worst} did not stabilize within depth "
                f"{max_depth} (window {window}); groups so far: "
                + ", ".join(render_group(g) for g in history[worst]),
                theory=theory,
                degree=worst,
                history=[
                    (n, [render_group(g) for g in history[n]]) for n in missing
                ],
            )
        stage(depth + 1)
        for n in degrees:
            history[n].append(presentations[depth + 1][n].group)
            if n in stabilized:
                continue
            if transition_is_iso(depth, n):
                quiet[n] += 1
                if quiet[n] >= window:
                    stabilized[n] = depth + 1 - window
            else:
                quiet[n] = 0
        depth += 1
    depth_used = max(stabilized.values(), default=0)
    final = presentations[depth_used]
    integral = {n: final[n].group for n in degrees}
    caveats = [
        "transition maps verified to be isomorphisms for "
        f"{window} consecutive stages; the periodic presentation is assumed "
        "to keep them isomorphisms beyond the probed depth"
    ]
    if not forward:
        caveats.append(
            "limit computed as the stable value; the derived limit vanishes "
            "because the probed transitions are isomorphisms (Mittag-Leffler)"
        )
    stage_bases = {n: stages[depth_used].basis(n) for n in degrees}
    return _convert_results(
        theory, space_label, coeff, integral,
        cohomological=dual,
        stabilized_at=stabilized, window=window, depth_used=depth_used,
        caveats=caveats,
        presentations=final, bases=stage_bases,
        max_degree=max_degree,
    )


def _run_finite(space, space_label, theory, coeff, max_degree, dual):
    internal_top = max_degree + (1 if coeff.kind == "zmod" else 0)
    stage = StageComplex(space, frozenset())
    pres = _finite_presentations(stage, range(internal_top + 1), dual)
    integral = {n: p.group for n, p in pres.items()}
    bases = {n: stage.basis(n) for n in range(internal_top + 1)}
    return _convert_results(
        theory, space_label, coeff, integral,
        cohomological=dual,
        stabilized_at=None, window=None, depth_used=None,
        caveats=[], presentations=pres, bases=bases,
        max_degree=max_degree,
    )


def homology(space, coeff: Coefficients = INTEGER, max_degree: int | None = None,
             window: int = 3, max_depth: int = 12) -> TheoryResult:
    """Ordinary homology; on an exhaustion, the colimit over the stages."""
    label = _space_label(space, "space")
    if max_degree is None:
        max_degree = _default_max_degree(space)
    if isinstance(space, FiniteSimplicialSet):
        return _run_finite(space, label, "H", coeff, max_degree, dual=False)
    return _run_system(space, label, "H", coeff, max_degree, window, max_depth,
                       relative=False, dual=False, forward=True)


def bm_homology(space, coeff: Coefficients = INTEGER, max_degree: int | None = None,
                window: int = 3, max_depth: int = 12) -> TheoryResult:
    """Borel–Moore homology: chains modulo the frontier, limit over stages.

    On a finite complex this coincides with ordinary homology (the frontier
    is empty); the result is tagged H_BM either way.
    """
    label = _space_label(space, "space")
    if max_degree is None:
        max_degree = _default_max_degree(space)
    if isinstance(space, FiniteSimplicialSet):
        result = _run_finite(space, label, "H_BM", coeff, max_degree, dual=False)
        result.caveats.append("finite complex: Borel–Moore equals ordinary homology")
        return result
    return _run_system(space, label, "H_BM", coeff, max_degree, window, max_depth,
                       relative=True, dual=False, forward=False)


def cohomology(space, coeff: Coefficients = INTEGER, max_degree: int | None = None,
               window: int = 3, max_depth: int = 12) -> TheoryResult:
    """Ordinary cohomology; on an exhaustion, the limit along restrictions."""
    label = _space_label(space, "space")
    if max_degree is None:
        max_degree = _default_max_degree(space)
    if isinstance(space, FiniteSimplicialSet):
        return _run_finite(space, label, "H_co", coeff, max_degree, dual=True)
    return _run_system(space, label, "H_co", coeff, max_degree, window, max_depth,
                       relative=False, dual=True, forward=False)


def cohomology_c(space, coeff: Coefficients = INTEGER, max_degree: int | None = None,
                 window: int = 3, max_depth: int = 12) -> TheoryResult:
    """Compactly supported cohomology: colimit of the duals of the
    stage-relative complexes, transitions extending by zero.

    Finite complexes give ordinary cohomology.
    """
    label = _space_label(space, "space")
    if max_degree is None:
        max_degree = _default_max_degree(space)
    if isinstance(space, FiniteSimplicialSet):
        result = _run_finite(space, label, "H_c", coeff, max_degree, dual=True)
        result.caveats.append("finite complex: compact support is automatic")
        return result
    return _run_system(space, label, "H_c", coeff, max_degree, window, max_depth,
                       relative=True, dual=True, forward=True)


THEORY_DRIVERS = {
    "H": homology,
    "H_BM": bm_homology,
    "H_co": cohomology,
    "H_c": cohomology_c,
}


# --------------------------------------------------------------------------
# chains, cochains, pairings

@dataclass
class Chain:
    """A finitely supported integer chain on the nondegenerate cells."""

    complex: FiniteSimplicialSet
    degree: int
    coeffs: dict

    def __post_init__(self):
        clean = {}
        for cell, a in self.coeffs.items():
            if not isinstance(cell, Cell) or cell.dim != self.degree:
                raise SimplicialError(f"{cell} is not a {self.degree}-cell")
            if not self.complex.has_cell(cell):
                raise SimplicialError(f"{cell} is not in the complex")
            if a:
                clean[cell] = int(a)
        self.coeffs = clean

    def vector(self, basis) -> tuple:
        return tuple(self.coeffs.get(c, 0) for c in basis)

    def __eq__(self, other):
        return (
            isinstance(other, Chain)
            and self.complex is other.complex
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )


@dataclass
class Cochain:
    """A function on nondegenerate cells (vanishing on degenerates)."""

    complex: FiniteSimplicialSet
    degree: int
    values: dict

    def __post_init__(self):
        clean = {}
        for cell, a in self.values.items():
            if not isinstance(cell, Cell) or cell.dim != self.degree:
                raise SimplicialError(f"{cell} is not a {self.degree}-cell")
            if not self.complex.has_cell(cell):
                raise SimplicialError(f"{cell} is not in the complex")
            if a:
                clean[cell] = int(a)
        self.values = clean

    def __call__(self, x) -> int:
        if isinstance(x, Cell):
            return self.values.get(x, 0)
        if isinstance(x, Simplex):
            if not x.is_nondegenerate:
                return 0
            return self.values.get(x.core, 0)
        raise SimplicialError(f"cannot evaluate a cochain on {x!r}")

    def vector(self, basis) -> tuple:
        return tuple(self.values.get(c, 0) for c in basis)


def boundary(chain: Chain) -> Chain:
    out = {}
    X = chain.complex
    for cell, a in chain.coeffs.items():
        for i in range(chain.degree + 1):
            fv = X.face(cell, i)
            if not fv.is_nondegenerate:
                continue
            sign = -1 if i % 2 else 1
            out[fv.core] = out.get(fv.core, 0) + sign * a
    return Chain(X, chain.degree - 1, out)


def coboundary(cochain: Cochain) -> Cochain:
    X = cochain.complex
    out = {}
    for cell in X.cells(cochain.degree + 1):
        total = 0
        for i in range(cochain.degree + 2):
            fv = X.face(cell, i)
            sign = -1 if i % 2 else 1
            total += sign * cochain(fv)
        if total:
            out[cell] = total
    return Cochain(X, cochain.degree + 1, out)


def pairing(cochain: Cochain, chain: Chain) -> int:
    if cochain.complex is not chain.complex or cochain.degree != chain.degree:
        raise SimplicialError("pairing needs a cochain and chain of the same degree")
    return sum(cochain.values.get(c, 0) * a for c, a in chain.coeffs.items())


def pushforward(f: SimplicialMap, chain: Chain) -> Chain:
    """The induced map on normalized chains: degenerate images vanish."""
    if chain.complex is not f.source:
        raise SimplicialError("chain does not live on the map's source")
    out = {}
    for cell, a in chain.coeffs.items():
        img = f.eval(f.source.simplex(cell))
        if not img.is_nondegenerate:
            continue
        out[img.core] = out.get(img.core, 0) + a
    return Chain(f.target, chain.degree, out)


def pullback(f: SimplicialMap, cochain: Cochain) -> Cochain:
    """Dual of the pushforward.  Total on finite complexes."""
    if cochain.complex is not f.target:
        raise SimplicialError("cochain does not live on the map's target")
    out = {}
    for cell in f.source.cells(cochain.degree):
        v = cochain(f.eval(f.source.simplex(cell)))
        if v:
            out[cell] = v
    return Cochain(f.source, cochain.degree, out)


def pullback_periodic(f, cochain: Cochain, depth: int, max_depth: int = 12):
    """Pullback of a compactly supported cochain along a periodic map.

    Requires the map to be proper — otherwise the preimage support would be
    infinite and the result would not be compactly supported; raises
    ControlError in that case.  The result is computed at increasing stages
    until its support stops growing, and returned on the source stage where
    it settled.
    """
    from .sset import PeriodicMap, is_proper_map

    if not isinstance(f, PeriodicMap):
        raise SimplicialError("pullback_periodic needs a periodic map")
    proper = is_proper_map(f, max_depth=max_depth)
    if not proper.ok:
        raise ControlError(
            "pullback of compactly supported cochains needs a proper map: "
            + (proper.witness or "not proper")
        )
    previous = None
    for d in range(depth, max_depth + 1):
        level = f.level_map(d)
        pulled = {}
        for cell in level.source.cells(cochain.degree):
            v = cochain(level.eval(level.source.simplex(cell)))
            if v:
                pulled[cell] = v
        if previous is not None and pulled == previous[1]:
            return Cochain(level.source, cochain.degree, pulled)
        previous = (d, pulled)
    raise ControlError(
        f"pullback support kept growing through depth {max_depth}"
    )


# --------------------------------------------------------------------------
# the Borel–Moore / compact-support pairing

@dataclass
class PairingResult:
    degree: int
    depth: int | None
    bm_group: AbelianGroup
    cc_group: AbelianGroup
    matrix: tuple  # rows: compact-support classes, cols: Borel–Moore classes


def pairing_matrix(space, degree: int, window: int = 3,
                   max_depth: int = 12) -> PairingResult:
    """Evaluate compact-support cohomology classes on Borel–Moore classes.

    Both theories are stabilized first; the pairing is then the coordinate
    dot product at a common stage (the class pairing is independent of the
    representatives: coboundaries pair to zero with cycles and vice versa).
    On a finite complex this is the plain evaluation of cohomology on
    homology.
    """
    if isinstance(space, FiniteSimplicialSet):
        depth = None
        stage = StageComplex(space, frozenset())
    else:
        bm = bm_homology(space, INTEGER, max_degree=degree, window=window,
                         max_depth=max_depth)
        cc = cohomology_c(space, INTEGER, max_degree=degree, window=window,
                          max_depth=max_depth)
        depth = max(bm.depth_used, cc.depth_used)
        stage = _stage_for(space, depth, relative=True)
    pres = _finite_presentations(stage, [degree], dual=False)[degree]
    dual_pres = _finite_presentations(stage, [degree], dual=True)[degree]
    rows = []
    for phi in dual_pres.generators:
        row = []
        for c in pres.generators:
            row.append(sum(a * b for a, b in zip(phi, c)))
        rows.append(tuple(row))
    return PairingResult(
        degree=degree,
        depth=depth,
        bm_group=pres.group,
        cc_group=dual_pres.group,
        matrix=tuple(rows),
    )


# --------------------------------------------------------------------------
# small conveniences used by tests and the CLI

def euler_characteristic(result: TheoryResult) -> int:
    """Alternating sum of free ranks over the computed degrees."""
    return sum(
        (-1) ** n * g.free_rank for n, g in sorted(result.groups.items())
    )


def induced_on_homology(f: SimplicialMap, degree: int):
    """The matrix of H_degree(f) between the normalized presentations,
    returned as (source_presentation, target_presentation, image_coords)."""
    src = StageComplex(f.source, frozenset())
    tgt = StageComplex(f.target, frozenset())
    ps = present_homology(src.boundary(degree), src.boundary(degree + 1))
    pt = present_homology(tgt.boundary(degree), tgt.boundary(degree + 1))
    tgt_index = {c: i for i, c in enumerate(tgt.basis(degree))}
    cols = []
    for cell in src.basis(degree):
        col = [0] * len(tgt.basis(degree))
        img = f.eval(f.source.simplex(cell))
        if img.is_nondegenerate:
            col[tgt_index[img.core]] += 1
        cols.append(col)
    m = IntMatrix(
        len(tgt.basis(degree)), len(cols),
        tuple(tuple(col[r] for col in cols) for r in range(len(tgt.basis(degree)))),
    )
    return ps, pt, reduced_images(ps, pt, m)
