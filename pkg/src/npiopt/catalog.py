"""The 12 intervention plans: admissible levels and realistic base costs."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "PlanSpec",
    "PlanCatalog",
    "default_catalog",
    "validate_assignment",
    "PLAN_COLUMNS",
]

# (code, display name, max level, realistic base cost on the 1..10 scale)
_PLAN_TABLE = (
    ("C1", "C1_School closing", 3, 9),
    ("C2", "C2_Workplace closing", 3, 6),
    ("C3", "C3_Cancel public events", 2, 2),
    ("C4", "C4_Restrictions on gatherings", 4, 5),
    ("C5", "C5_Close public transport", 2, 8),
    ("C6", "C6_Stay at home requirements", 3, 7),
    ("C7", "C7_Restrictions on internal movement", 2, 7),
    ("C8", "C8_International travel controls", 4, 8),
    ("H1", "H1_Public information campaigns", 2, 2),
    ("H2", "H2_Testing policy", 3, 3),
    ("H3", "H3_Contact tracing", 2, 7),
    ("H6", "H6_Facial Coverings", 4, 2),
)

# Display names double as the external CSV column headers.
PLAN_COLUMNS = tuple(name for _, name, _, _ in _PLAN_TABLE)


@dataclass(frozen=True)
class PlanSpec:
    """One intervention plan: contiguous levels 0..max_level and its base cost."""

    code: str
    display_name: str
    max_level: int
    realistic_base_cost: int

    @property
    def levels(self) -> range:
        return range(self.max_level + 1)

    @property
    def n_levels(self) -> int:
        return self.max_level + 1


@dataclass(frozen=True)
class PlanCatalog:
    """Ordered, immutable collection of plans."""

    plans: tuple[PlanSpec, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_by_code", {p.code: p for p in self.plans}
        )

    @property
    def codes(self) -> tuple[str, ...]:
        return tuple(p.code for p in self.plans)

    def plan(self, code: str) -> PlanSpec:
        return self._by_code[code]

    def __contains__(self, code: str) -> bool:
        return code in self._by_code

    def __len__(self) -> int:
        return len(self.plans)

    def joint_space_size(self) -> int:
        size = 1
        for p in self.plans:
            size *= p.n_levels
        return size

    def index_of(self, code: str) -> int:
        return self.codes.index(code)


_DEFAULT = PlanCatalog(
    plans=tuple(
        PlanSpec(code, name, max_level, cost)
        for code, name, max_level, cost in _PLAN_TABLE
    )
)


def default_catalog() -> PlanCatalog:
    """The full 12-plan catalog. Immutable; the same object on every call."""
    return _DEFAULT


def validate_assignment(catalog: PlanCatalog, assignment: dict[str, int]) -> bool:
    """True iff assignment maps every catalog plan, and nothing else, to an admissible level."""
    if set(assignment) != set(catalog.codes):
        return False
    for code, level in assignment.items():
        try:
            value = int(level)
        except (TypeError, ValueError):
            return False
        if value != level or not 0 <= value <= catalog.plan(code).max_level:
            return False
    return True
