"""Controlled sets: carriers with a family of "small" subsets, and the maps
that respect it.

A control structure on a carrier X is a family of subsets containing every
finite subset and closed under subsets and finite unions.  A map of controlled
sets must send controlled subsets to controlled subsets and be finite-to-one
over every controlled subset of its source.  Two canonical structures exist on
any carrier: the minimal one (exactly the finite subsets) and the maximal one
(all subsets); finitely generated structures are supported on finite carriers.

Infinite carriers are represented symbolically by a single countably infinite
carrier (the naturals) together with a closed catalogue of assignments —
constants and finitely patched shifts — for which both map conditions are
decidable in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product


class ControlError(ValueError):
    """Domain errors: elements outside carriers, mismatched composition."""


class UnsupportedRepresentationError(ControlError):
    """A construction that the chosen finite presentations cannot express."""


# --------------------------------------------------------------------------
# carriers

FINITE = "finite"
NATURALS = "naturals"


@dataclass(frozen=True)
class Carrier:
    kind: str
    elements: tuple = ()

    def __post_init__(self):
        if self.kind not in (FINITE, NATURALS):
            raise ControlError(f"unknown carrier kind {self.kind!r}")
        object.__setattr__(self, "elements", tuple(self.elements))
        if self.kind == FINITE:
            if len(set(self.elements)) != len(self.elements):
                raise ControlError("carrier elements must be distinct")
        elif self.elements:
            raise ControlError("the naturals carrier takes no element list")

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    def __contains__(self, x) -> bool:
        if self.is_finite:
            return x in self.elements
        return isinstance(x, int) and not isinstance(x, bool) and x >= 0

    def size(self):
        return len(self.elements) if self.is_finite else None

    def __repr__(self):
        if self.is_finite:
            return f"Carrier({list(self.elements)})"
        return "Carrier(naturals)"


def finite_carrier(elements) -> Carrier:
    return Carrier(FINITE, tuple(elements))


def naturals() -> Carrier:
    return Carrier(NATURALS)


# --------------------------------------------------------------------------
# subset descriptors

@dataclass(frozen=True)
class SubsetDescriptor:
    """A subset of a carrier: an explicit finite list, everything, or a tail
    {start, start+1, ...} of the naturals."""

    kind: str  # "list" | "all" | "tail"
    elements: tuple = ()
    start: int = 0

    def __post_init__(self):
        if self.kind not in ("list", "all", "tail"):
            raise ControlError(f"unknown subset descriptor kind {self.kind!r}")
        object.__setattr__(self, "elements", tuple(self.elements))

    def check_within(self, carrier: Carrier):
        if self.kind == "list":
            for x in self.elements:
                if x not in carrier:
                    raise ControlError(f"element {x!r} outside carrier")
        elif self.kind == "tail":
            if not carrier.is_finite and self.start < 0:
                raise ControlError("tail start must be non-negative")
            if carrier.is_finite:
                raise ControlError("tail descriptors only apply to the naturals")

    def is_finite_on(self, carrier: Carrier) -> bool:
        if self.kind == "list":
            return True
        if self.kind == "all":
            return carrier.is_finite
        return False  # a tail of the naturals

    def members_on(self, carrier: Carrier) -> tuple:
        """Concrete members; only valid when finite on the carrier."""
        if self.kind == "list":
            return tuple(dict.fromkeys(self.elements))
        if self.kind == "all" and carrier.is_finite:
            return carrier.elements
        raise UnsupportedRepresentationError("subset is not finitely enumerable")


def finite_list(*elements) -> SubsetDescriptor:
    return SubsetDescriptor("list", tuple(elements))


ALL = SubsetDescriptor("all")


def cofinal_tail(start: int) -> SubsetDescriptor:
    return SubsetDescriptor("tail", start=start)


# --------------------------------------------------------------------------
# control structures and controlled sets

MIN = "min"
MAX = "max"
GENERATED = "generated"


@dataclass(frozen=True)
class ControlStructure:
    kind: str
    generators: tuple = ()  # tuple of frozensets, GENERATED only

    def __post_init__(self):
        if self.kind not in (MIN, MAX, GENERATED):
            raise ControlError(f"unknown control structure kind {self.kind!r}")
        gens = tuple(frozenset(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if gens and self.kind != GENERATED:
            raise ControlError("only generated structures take generators")


@dataclass(frozen=True)
class ControlledSet:
    carrier: Carrier
    structure: ControlStructure

    def __post_init__(self):
        if self.structure.kind == GENERATED:
            if not self.carrier.is_finite:
                raise UnsupportedRepresentationError(
                    "generated structures are only representable on finite carriers"
                )
            for g in self.structure.generators:
                for x in g:
                    if x not in self.carrier:
                        raise ControlError(f"generator element {x!r} outside carrier")

    def __repr__(self):
        return f"ControlledSet({self.carrier!r}, {self.structure.kind})"


def min_ctl(carrier: Carrier) -> ControlledSet:
    """The minimal structure: exactly the finite subsets are controlled."""
    return ControlledSet(carrier, ControlStructure(MIN))


def max_ctl(carrier: Carrier) -> ControlledSet:
    """The maximal structure: every subset is controlled."""
    return ControlledSet(carrier, ControlStructure(MAX))


def generated_ctl(carrier: Carrier, generators) -> ControlledSet:
    return ControlledSet(carrier, ControlStructure(GENERATED, tuple(generators)))


def forget(X: ControlledSet) -> Carrier:
    return X.carrier


def same_controlled_sets(X: ControlledSet, Y: ControlledSet) -> bool:
    """Whether two presentations describe the same family of controlled subsets."""
    if X.carrier != Y.carrier:
        return False
    if X.carrier.is_finite:
        return True  # every structure on a finite carrier is the full power set
    return X.structure.kind == Y.structure.kind


def is_controlled(X: ControlledSet, S: SubsetDescriptor) -> bool:
    """Membership of the described subset in the control structure of X."""
    S.check_within(X.carrier)
    if X.carrier.is_finite:
        # Axiom: every finite subset is controlled, and on a finite carrier
        # every subset is finite, whatever the presentation.
        return True
    if X.structure.kind == MAX:
        return True
    # minimal structure on the naturals: precisely the finite subsets
    return S.is_finite_on(X.carrier)


# --------------------------------------------------------------------------
# structure validation

@dataclass
class StructureReport:
    ok: bool
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    controlled_family_size: int | None = None


def _generated_family(carrier: Carrier, generators) -> set[frozenset]:
    """The family presented on a finite carrier: S is controlled when
    S minus the union of the generators is finite (subsets of some generator
    union plus a finite remainder)."""
    elems = carrier.elements
    if len(elems) > 8:
        raise UnsupportedRepresentationError(
            "exhaustive structure validation is limited to carriers of size <= 8"
        )
    family = set()
    pool = list(elems)
    for mask in range(1 << len(pool)):
        s = frozenset(pool[i] for i in range(len(pool)) if mask >> i & 1)
        # membership rule: s minus the generator union must be finite, which
        # on a finite carrier holds for every subset
        family.add(s)
    return family


def validate_structure(X: ControlledSet) -> StructureReport:
    """Check the three control-structure axioms.

    On finite carriers this is an exhaustive check over the power set; on the
    naturals the Min/Max families satisfy the axioms by closed-form argument,
    recorded in the notes.
    """
    report = StructureReport(ok=True)
    if not X.carrier.is_finite:
        if X.structure.kind == MIN:
            report.notes.append(
                "minimal structure on the naturals: finite subsets contain all "
                "finite sets, and are closed under subsets and finite unions"
            )
        else:
            report.notes.append(
                "maximal structure on the naturals: the full power set trivially "
                "satisfies all three axioms"
            )
        return report

    family = _generated_family(X.carrier, X.structure.generators)
    report.controlled_family_size = len(family)
    pool = list(family)
    # axiom 1: every finite subset is controlled (all subsets, carrier finite)
    for mask in range(1 << len(X.carrier.elements)):
        s = frozenset(
            X.carrier.elements[i]
            for i in range(len(X.carrier.elements))
            if mask >> i & 1
        )
        if s not in family:
            report.ok = False
            report.violations.append(f"finite subset {set(s) or '{}'} is not controlled")
    # axiom 2: closed under subsets
    for s in pool:
        for x in s:
            if s - {x} not in family:
                report.ok = False
                report.violations.append(f"subset closure fails below {set(s)}")
    # axiom 3: closed under finite (binary suffices) unions
    for s in pool:
        for t in pool:
            if s | t not in family:
                report.ok = False
                report.violations.append(f"union {set(s)} | {set(t)} is not controlled")
    if X.structure.kind == GENERATED and report.ok:
        report.notes.append(
            "generated structure on a finite carrier collapses to the full "
            "power set (every subset is finite)"
        )
    return report


# --------------------------------------------------------------------------
# maps

@dataclass
class TableAssignment:
    """Explicit value table; the source carrier must be finite."""

    mapping: dict

    def evaluate(self, x):
        return self.mapping[x]


@dataclass
class ConstantAssignment:
    """Everything goes to one target element; used from the naturals."""

    value: object

    def evaluate(self, x):
        return self.value


@dataclass
class ShiftAssignment:
    """n -> n + offset on the naturals, with finitely many patched values."""

    offset: int = 0
    patch: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.offset < 0:
            raise ControlError("shift offset must be non-negative")
        for k, v in self.patch.items():
            if k < 0 or v < 0:
                raise ControlError("patch entries must be natural numbers")
        # patches that agree with the shift are redundant; normalize them away
        self.patch = {k: v for k, v in self.patch.items() if v != k + self.offset}

    def evaluate(self, x):
        if x in self.patch:
            return self.patch[x]
        return x + self.offset


@dataclass
class ControlledMap:
    source: ControlledSet
    target: ControlledSet
    assignment: object

    def __post_init__(self):
        src, tgt = self.source.carrier, self.target.carrier
        a = self.assignment
        if isinstance(a, TableAssignment):
            if not src.is_finite:
                raise UnsupportedRepresentationError(
                    "table assignments need a finite source carrier"
                )
            missing = [x for x in src.elements if x not in a.mapping]
            if missing:
                raise ControlError(f"assignment missing values for {missing}")
            for x in src.elements:
                if a.mapping[x] not in tgt:
                    raise ControlError(f"value {a.mapping[x]!r} outside target carrier")
        elif isinstance(a, ConstantAssignment):
            if a.value not in tgt:
                raise ControlError(f"constant value {a.value!r} outside target carrier")
        elif isinstance(a, ShiftAssignment):
            if src.is_finite or tgt.is_finite:
                raise UnsupportedRepresentationError(
                    "shift assignments map the naturals to the naturals"
                )
        else:
            raise UnsupportedRepresentationError(
                f"unknown assignment representation {type(a).__name__}"
            )

    def evaluate(self, x):
        if x not in self.source.carrier:
            raise ControlError(f"element {x!r} outside source carrier")
        return self.assignment.evaluate(x)

    def __repr__(self):
        return f"ControlledMap({self.source!r} -> {self.target!r})"


def identity_map(X: ControlledSet) -> ControlledMap:
    if X.carrier.is_finite:
        return ControlledMap(X, X, TableAssignment({x: x for x in X.carrier.elements}))
    return ControlledMap(X, X, ShiftAssignment(0, {}))


@dataclass
class MapReport:
    ok: bool
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def validate_map(f: ControlledMap) -> MapReport:
    """Check both conditions of a controlled map.

    Finite sources are checked exhaustively over the power set of the carrier;
    catalogue assignments from the naturals are decided in closed form, with
    concrete witnesses reported on failure.
    """
    report = MapReport(ok=True)
    src, tgt = f.source, f.target

    if src.carrier.is_finite:
        elems = src.carrier.elements
        if len(elems) > 16:
            raise UnsupportedRepresentationError(
                "exhaustive map validation is limited to carriers of size <= 16"
            )
        for mask in range(1 << len(elems)):
            sub = [elems[i] for i in range(len(elems)) if mask >> i & 1]
            image = tuple(dict.fromkeys(f.evaluate(x) for x in sub))
            if not is_controlled(tgt, finite_list(*image)):
                report.ok = False
                report.violations.append(
                    f"image of controlled {set(sub) or '{}'} is not controlled"
                )
            # fibers over a finite restriction are finite by counting; record
            # nothing unless the count argument could fail, which it cannot.
        return report

    # source carrier is the naturals
    a = f.assignment
    min_source = src.structure.kind == MIN
    if min_source:
        report.notes.append(
            "minimal source: controlled subsets are finite, so images are "
            "finite (hence controlled) and restricted fibers are finite"
        )
        return report

    # maximal structure on the naturals: the whole carrier is controlled
    if isinstance(a, ConstantAssignment):
        # condition 1 holds (images are singletons); condition 2 fails: the
        # fiber over the constant value meets the controlled full carrier
        # in an infinite set.
        report.ok = False
        report.violations.append(
            f"restriction to the full carrier is not proper: the fiber over "
            f"{a.value!r} is infinite"
        )
    elif isinstance(a, ShiftAssignment):
        # images of infinite controlled subsets are infinite (the shift part
        # is injective), so they must be controlled in the target
        if tgt.carrier.is_finite:
            raise UnsupportedRepresentationError("shift into a finite carrier")
        if tgt.structure.kind == MIN:
            report.ok = False
            report.violations.append(
                "image of the full carrier is infinite, hence not controlled "
                "in a minimal target"
            )
        # condition 2: fibers have size <= 1 + patch size, always finite
        report.notes.append(
            f"fibers are bounded by 1 + {len(a.patch)} patched points"
        )
    else:
        raise UnsupportedRepresentationError(
            "table assignments cannot have the naturals as source"
        )
    return report


def compose(g: ControlledMap, f: ControlledMap) -> ControlledMap:
    """g after f; the assignment catalogue is closed under composition."""
    if f.target.carrier != g.source.carrier:
        raise ControlError("cannot compose: carriers do not line up")
    if not same_controlled_sets(f.target, g.source):
        raise ControlError("cannot compose: control structures do not agree")
    fa, ga = f.assignment, g.assignment

    if isinstance(fa, TableAssignment):
        table = {x: ga.evaluate(y) for x, y in fa.mapping.items()}
        return ControlledMap(f.source, g.target, TableAssignment(table))

    if isinstance(fa, ConstantAssignment):
        return ControlledMap(f.source, g.target, ConstantAssignment(ga.evaluate(fa.value)))

    # fa is a shift of the naturals; ga is constant or a shift
    if isinstance(ga, ConstantAssignment):
        return ControlledMap(f.source, g.target, ConstantAssignment(ga.value))
    if isinstance(ga, ShiftAssignment):
        offset = fa.offset + ga.offset
        candidates = set(fa.patch)
        for m in ga.patch:
            if m >= fa.offset and (m - fa.offset) not in fa.patch:
                candidates.add(m - fa.offset)
        patch = {}
        for n in candidates:
            value = ga.evaluate(fa.evaluate(n))
            if value != n + offset:
                patch[n] = value
        return ControlledMap(f.source, g.target, ShiftAssignment(offset, patch))
    raise UnsupportedRepresentationError(
        f"composite falls outside the assignment catalogue: {type(ga).__name__}"
    )


def all_set_maps(source: Carrier, target: Carrier):
    """All assignments between finite carriers, as TableAssignment values."""
    if not (source.is_finite and target.is_finite):
        raise UnsupportedRepresentationError("enumeration needs finite carriers")
    if not source.elements:
        yield TableAssignment({})
        return
    for values in product(target.elements, repeat=len(source.elements)):
        yield TableAssignment(dict(zip(source.elements, values)))


@dataclass
class AdjunctionReport:
    ok: bool
    set_map_count: int
    controlled_map_count: int
    failures: list[str] = field(default_factory=list)


def adjunction_check(S: Carrier, X: ControlledSet) -> AdjunctionReport:
    """Hom(min_ctl(S), X) must biject with set maps S -> forget(X): placing
    the minimal structure on a set is left adjoint to forgetting.

    Enumerates both sides exhaustively (finite carriers only): every set map
    must validate as a controlled map, and distinct assignments stay distinct,
    so the unit/counit bijection is the identity on value tables.
    """
    if not (S.is_finite and X.carrier.is_finite):
        raise UnsupportedRepresentationError("adjunction check needs finite carriers")
    source = min_ctl(S)
    failures = []
    set_maps = 0
    controlled = 0
    for table in all_set_maps(S, X.carrier):
        set_maps += 1
        candidate = ControlledMap(source, X, table)
        verdict = validate_map(candidate)
        if verdict.ok:
            controlled += 1
        else:
            failures.append(
                f"set map {table.mapping} fails to be controlled: {verdict.violations}"
            )
    return AdjunctionReport(
        ok=not failures and set_maps == controlled,
        set_map_count=set_maps,
        controlled_map_count=controlled,
        failures=failures,
    )
