"""Profiles, the grounded/paradoxical/inevitable/intrinsic taxonomy, and the
definability audit over a pool."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ..isolator import Tensor
from .kleene import K3
from .pool import FixedPointSet, Pool, compatible, enumerate_fixed_points


def _points(pool: Pool, fixed_points: Optional[FixedPointSet]) -> FixedPointSet:
    return fixed_points if fixed_points is not None else enumerate_fixed_points(pool)


def profile(pool: Pool, names: Sequence[str], fixed_points: Optional[FixedPointSet] = None) -> Tensor:
    """Value combinations the named sentences take across all fixed points."""
    names = tuple(names)
    if not names:
        raise ValueError("profile needs at least one name")
    for name in names:
        if name not in pool:
            raise KeyError(f"unknown sentence {name!r}")
    cells = {tuple(w[n].code for n in names) for w in _points(pool, fixed_points)}
    return Tensor.from_cells(cells, n=len(names), v=3)


def intrinsic_points(fixed_points: FixedPointSet) -> list[int]:
    """Indices of fixed points compatible with every fixed point."""
    pts = fixed_points.points
    return [i for i, w in enumerate(pts) if all(compatible(w, u) for u in pts)]


@dataclass(frozen=True)
class Classification:
    grounded: bool
    paradoxical: bool
    inevitable: bool
    intrinsic: bool
    profile: Tensor

    def flags(self) -> list[str]:
        return [k for k in ("grounded", "paradoxical", "inevitable", "intrinsic") if getattr(self, k)]

    def to_json(self) -> dict:
        return {
            "grounded": self.grounded,
            "paradoxical": self.paradoxical,
            "inevitable": self.inevitable,
            "intrinsic": self.intrinsic,
            "profile": [c[0] for c in self.profile.cells()],
        }


def classify(pool: Pool, name: str, fixed_points: Optional[FixedPointSet] = None) -> Classification:
    fps = _points(pool, fixed_points)
    prof = profile(pool, [name], fps)
    values = {c[0] for c in prof.cells()}
    can_true, can_false = 1 in values, 2 in values
    intrinsic = any(fps[i][name] is not K3.NEITHER for i in intrinsic_points(fps))
    return Classification(
        grounded=values in ({1}, {2}),
        paradoxical=values == {3},
        inevitable=can_true != can_false,
        intrinsic=intrinsic,
        profile=prof,
    )


def classify_pool(pool: Pool) -> dict[str, Classification]:
    fps = enumerate_fixed_points(pool)
    return {name: classify(pool, name, fps) for name in pool.names}


# -- definability audit ---------------------------------------------------------

# The six admissible arity-1 profiles, labelled by their possible values.
PROFILE_LABELS: tuple[tuple[str, frozenset[int]], ...] = (
    ("TFN", frozenset({1, 2, 3})),
    ("TN", frozenset({1, 3})),
    ("FN", frozenset({2, 3})),
    ("T", frozenset({1})),
    ("F", frozenset({2})),
    ("N", frozenset({3})),
)

INEVITABLE_PROFILES = ("TN", "FN", "T", "F")


@dataclass(frozen=True)
class Candidate:
    """A disjunction of intensional arity-1 isolators and the set it picks out."""

    profiles: tuple[str, ...]
    members: frozenset[str]

    @property
    def label(self) -> str:
        return "|".join(self.profiles) if self.profiles else "(empty)"


@dataclass(frozen=True)
class AuditReport:
    profiles: dict[str, str]
    intrinsic: frozenset[str]
    inevitable: frozenset[str]
    candidates: tuple[Candidate, ...]
    intrinsic_matches: tuple[Candidate, ...]
    inevitable_matches: tuple[Candidate, ...]
    indiscernible_pairs: tuple[tuple[str, str], ...]

    @property
    def intrinsic_definable(self) -> bool:
        return bool(self.intrinsic_matches)

    @property
    def inevitable_definable(self) -> bool:
        return bool(self.inevitable_matches)

    def to_json(self) -> dict:
        return {
            "profiles": self.profiles,
            "intrinsic": sorted(self.intrinsic),
            "inevitable": sorted(self.inevitable),
            "candidates": len(self.candidates),
            "intrinsic_matches": [c.label for c in self.intrinsic_matches],
            "inevitable_matches": [c.label for c in self.inevitable_matches],
            "indiscernible_pairs": [list(p) for p in self.indiscernible_pairs],
        }

    def lines(self) -> list[str]:
        out = [f"{name}: profile {label}" for name, label in self.profiles.items()]
        out.append("intrinsic: {" + ", ".join(sorted(self.intrinsic)) + "}")
        out.append("inevitable: {" + ", ".join(sorted(self.inevitable)) + "}")
        out.append(f"candidates checked: {len(self.candidates)}")
        out.append("inevitable set defined by: " + (", ".join(c.label for c in self.inevitable_matches) or "none"))
        out.append("intrinsic set defined by: " + (", ".join(c.label for c in self.intrinsic_matches) or "none"))
        for a, b in self.indiscernible_pairs:
            out.append(f"same profile, intrinsic {a} vs non-intrinsic {b}")
        return out


def _label_of(prof: Tensor) -> str:
    values = frozenset(c[0] for c in prof.cells())
    for label, vs in PROFILE_LABELS:
        if vs == values:
            return label
    raise AssertionError(f"profile {prof} is not an admissible arity-1 tensor")


def definability_audit(pool: Pool) -> AuditReport:
    """Sweep all 64 modal definitions of a set against the intrinsic and inevitable sets."""
    fps = enumerate_fixed_points(pool)
    classes = {name: classify(pool, name, fps) for name in pool.names}
    labels = {name: _label_of(c.profile) for name, c in classes.items()}
    intrinsic = frozenset(n for n, c in classes.items() if c.intrinsic)
    inevitable = frozenset(n for n, c in classes.items() if c.inevitable)
    candidates = []
    for bits in range(1 << len(PROFILE_LABELS)):
        chosen = tuple(lab for i, (lab, _) in enumerate(PROFILE_LABELS) if bits >> i & 1)
        members = frozenset(n for n, lab in labels.items() if lab in chosen)
        candidates.append(Candidate(chosen, members))
    pairs = tuple(
        (a, b)
        for a in pool.names
        for b in pool.names
        if labels[a] == labels[b] and a in intrinsic and b not in intrinsic
    )
    return AuditReport(
        profiles=labels,
        intrinsic=intrinsic,
        inevitable=inevitable,
        candidates=tuple(candidates),
        intrinsic_matches=tuple(c for c in candidates if c.members == intrinsic),
        inevitable_matches=tuple(c for c in candidates if c.members == inevitable),
        indiscernible_pairs=pairs,
    )
