"""Loader for the shipped arm fixtures (data/arms.tsv).

The file carries the transcribed polynomial tables (one record per arm
with all four printed fits and the first six terms), the spot-check window
definitions of the prime-share table, and the legible rows of the K5
intersection-point factor column.  Records are data, never code; the
serializer reproduces record lines byte-identically for round-trip checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib.resources import files

from .quad import Arm, ArmSystem, QuadPoly

_TABLE_PREFIXES = {
    "6A": ("P18-",),
    "6B": ("N20-", "P20-"),
    "6C": ("N22-",),
    "7": ("NS-P41", "SQ-P41"),
}


@dataclass(frozen=True)
class WindowSpec:
    """One spot-check window: scan [start_x, start_x + length) of an arm."""

    system: str
    arm: str
    label: str  # start | 2.5e6 | 2.5e7 | 2.5e8 | 2.5e9
    start_x: int
    length: int


@dataclass(frozen=True)
class K5Factor:
    """A pinned factorization row of the K5 intersection table."""

    x: int
    value: int
    factors: str  # "p^e*..." form


@dataclass(frozen=True)
class FixtureSet:
    systems: tuple[ArmSystem, ...]  # table arms, file order
    extras: tuple[ArmSystem, ...]  # B33 / K5 style derived records
    windows: tuple[WindowSpec, ...]
    k5_factors: tuple[K5Factor, ...]
    notes: tuple[str, ...]  # header comment lines (provenance, omissions)

    def table_systems(self, which: str) -> tuple[ArmSystem, ...]:
        """Systems belonging to one source table: 6A, 6B, 6C or 7."""
        prefixes = _TABLE_PREFIXES.get(which)
        if prefixes is None:
            raise KeyError(f"unknown table {which!r}; expected one of {sorted(_TABLE_PREFIXES)}")
        return tuple(s for s in self.systems if s.name.startswith(prefixes))

    def find_arm(self, name: str) -> tuple[ArmSystem, Arm]:
        """Resolve an arm by 'B3', 'P20-G1' or 'P20-G/G1'.

        Bare names must be unique across all systems (extras included);
        ambiguous ones need the system prefix.
        """
        name = name.strip()
        pools = self.systems + self.extras
        if "/" in name:
            sysname, armname = name.split("/", 1)
            for system in pools:
                if system.name == sysname:
                    for arm in system.arms:
                        if arm.name == armname:
                            return system, arm
            raise KeyError(f"no arm {armname!r} in system {sysname!r}")
        hits = []
        for system in pools:
            prefix = system.name.split("-")[0]  # "P20-G" -> "P20", so "P20-G1" works
            for arm in system.arms:
                if name in (arm.name, f"{prefix}-{arm.name}", f"{system.name}-{arm.name}"):
                    hits.append((system, arm))
        if not hits:
            raise KeyError(f"unknown arm {name!r}")
        if len(hits) > 1:
            named = sorted(f"{s.name}/{a.name}" for s, a in hits)
            raise KeyError(f"ambiguous arm {name!r}: matches {named}")
        return hits[0]


class FixtureError(ValueError):
    """Malformed fixture record; carries the offending line number."""

    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _parse_arm_record(fields: list[str], lineno: int) -> tuple[str, str, str, int, Arm]:
    if len(fields) != 15:
        raise FixtureError(lineno, f"arm record needs 15 fields, got {len(fields)}")
    _, system, armname, rotation, d2s, a_s = fields[:6]
    try:
        d2, a = int(d2s), int(a_s)
        coeffs = [int(v) for v in fields[6:14]]
        terms = tuple(int(t) for t in fields[14].split(","))
    except ValueError as exc:
        raise FixtureError(lineno, f"bad integer in arm {system}/{armname}: {exc}") from None
    fits = tuple(QuadPoly(a, coeffs[2 * i], coeffs[2 * i + 1]) for i in range(4))
    arm = Arm(name=armname, fits=fits, terms=terms)
    if 2 * a != d2:
        raise FixtureError(lineno, f"{system}/{armname}: a={a} does not match d2={d2}")
    for x in range(1, len(terms) + 1):
        if fits[0](x) != terms[x - 1]:
            raise FixtureError(
                lineno,
                f"{system}/{armname}: term {x} is {terms[x - 1]}, fit 1 gives {fits[0](x)}",
            )
    return system, armname, rotation, d2, arm


def parse_fixtures(text: str) -> FixtureSet:
    notes = []
    systems: dict[str, ArmSystem] = {}
    extras: dict[str, ArmSystem] = {}
    windows: list[WindowSpec] = []
    k5: list[K5Factor] = []
    order: list[str] = []
    extra_order: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        if line.startswith("#"):
            notes.append(line)
            continue
        fields = line.split("\t")
        kind = fields[0]
        if kind in ("arm", "extra"):
            system, armname, rotation, d2, arm = _parse_arm_record(fields, lineno)
            book = systems if kind == "arm" else extras
            tracker = order if kind == "arm" else extra_order
            if system not in book:
                book[system] = ArmSystem(name=system, d2=d2, rotation=rotation, arms=())
                tracker.append(system)
            current = book[system]
            if current.d2 != d2 or current.rotation != rotation:
                raise FixtureError(lineno, f"system {system} changes d2/rotation mid-file")
            book[system] = ArmSystem(
                name=system, d2=d2, rotation=rotation, arms=current.arms + (arm,)
            )
        elif kind == "window":
            if len(fields) != 6:
                raise FixtureError(lineno, f"window record needs 6 fields, got {len(fields)}")
            windows.append(
                WindowSpec(
                    system=fields[1],
                    arm=fields[2],
                    label=fields[3],
                    start_x=int(fields[4]),
                    length=int(fields[5]),
                )
            )
        elif kind == "k5ref":
            if len(fields) != 6:
                raise FixtureError(lineno, f"k5ref record needs 6 fields, got {len(fields)}")
            k5.append(K5Factor(x=int(fields[3]), value=int(fields[4]), factors=fields[5]))
        else:
            raise FixtureError(lineno, f"unknown record kind {kind!r}")
    return FixtureSet(
        systems=tuple(systems[name] for name in order),
        extras=tuple(extras[name] for name in extra_order),
        windows=tuple(windows),
        k5_factors=tuple(k5),
        notes=tuple(notes),
    )


def serialize_records(fx: FixtureSet) -> str:
    """Record lines (no comments) in canonical order; used for round-trip checks."""
    lines = []
    for kind, bundle in (("arm", fx.systems), ("extra", fx.extras)):
        for system in bundle:
            for arm in system.arms:
                flat: list[str] = []
                for fit in arm.fits:
                    flat += [str(fit.b), str(fit.c)]
                lines.append(
                    "\t".join(
                        [kind, system.name, arm.name, system.rotation, str(system.d2),
                         str(system.d2 // 2)]
                        + flat
                        + [",".join(str(t) for t in arm.terms)]
                    )
                )
    for w in fx.windows:
        lines.append("\t".join(["window", w.system, w.arm, w.label, str(w.start_x), str(w.length)]))
    for ref in fx.k5_factors:
        lines.append("\t".join(["k5ref", "N22-K", "K5", str(ref.x), str(ref.value), ref.factors]))
    return "\n".join(lines) + "\n"


def fixture_text() -> str:
    return files("rootspiral").joinpath("data/arms.tsv").read_text(encoding="utf-8")


@lru_cache(maxsize=4)
def load_fixtures(path: str | None = None) -> FixtureSet:
    """The shipped fixture set, or one parsed from an alternate file."""
    if path is None:
        return parse_fixtures(fixture_text())
    with open(path, encoding="utf-8") as fh:
        return parse_fixtures(fh.read())
