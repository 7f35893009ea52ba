"""Material catalog: conductors and dielectrics with the properties the
impedance, layout, and thermal modules consume.

The built-in catalog lives in ``data/materials.json`` and can be replaced
wholesale with a user file of the same schema (one record per material).
Catalogs are immutable after load and safe to share across workers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import ConfigInvalid, NotAConductor, OutOfRange, UnknownMaterial

CONDUCTOR = "conductor"
DIELECTRIC = "dielectric"


@dataclass(frozen=True)
class Material:
    """One catalog record.

    thermal_conductivity_table rows are (temperature [K], k [W/m/K]) with
    strictly increasing temperatures; melting_or_reflow_temp is in degC.
    """

    name: str
    kind: str
    relative_permittivity: float | None = None
    superconducting_Tc: float | None = None
    thermal_conductivity_table: tuple[tuple[float, float], ...] = ()
    melting_or_reflow_temp: float | None = None

    def __post_init__(self):
        if self.kind not in (CONDUCTOR, DIELECTRIC):
            raise ValueError(f"{self.name}: kind must be conductor or dielectric, got {self.kind!r}")
        if self.kind == DIELECTRIC:
            if self.relative_permittivity is None or self.relative_permittivity < 1.0:
                raise ValueError(f"{self.name}: dielectric needs relative_permittivity >= 1")
            if self.superconducting_Tc is not None:
                raise ValueError(f"{self.name}: superconducting_Tc only applies to conductors")
        else:
            if self.relative_permittivity is not None:
                raise ValueError(f"{self.name}: relative_permittivity only applies to dielectrics")
        prev_t = 0.0
        for t, k in self.thermal_conductivity_table:
            if t <= prev_t:
                raise ValueError(f"{self.name}: conductivity table temperatures must strictly increase")
            if k <= 0.0:
                raise ValueError(f"{self.name}: conductivity values must be > 0")
            prev_t = t


@dataclass(frozen=True)
class MaterialCatalog:
    entries: dict = field(default_factory=dict)
    aliases: dict = field(default_factory=dict)

    def lookup(self, name: str) -> Material:
        key = self.aliases.get(name, name)
        try:
            return self.entries[key]
        except KeyError:
            raise UnknownMaterial(name) from None

    def __contains__(self, name: str) -> bool:
        return self.aliases.get(name, name) in self.entries

    def names(self) -> list[str]:
        return sorted(self.entries)


REQUIRED_MATERIALS = (
    "Al", "Nb", "In", "TiN", "Sn-Pb", "Nb-Ti", "SUS-304", "OFHC-Cu",
    "polyimide", "PTFE", "STYCAST-1266", "Si", "sapphire",
)


def _material_from_record(rec: dict, where: str) -> Material:
    known = {
        "name", "kind", "relative_permittivity", "superconducting_Tc",
        "thermal_conductivity_table", "melting_or_reflow_temp",
    }
    fields = {k: v for k, v in rec.items() if k in known}
    try:
        table = tuple((float(t), float(k)) for t, k in fields.pop("thermal_conductivity_table", ()))
        return Material(thermal_conductivity_table=table, **fields)
    except (ValueError, TypeError) as exc:
        raise ConfigInvalid(where, str(exc)) from None


def load_catalog(path: str | Path) -> MaterialCatalog:
    """Load a catalog from a JSON file; see data/materials.json for the schema."""
    with open(path, encoding="utf-8") as f:
        raw = json.load(f)
    return _catalog_from_dict(raw, str(path))


def _catalog_from_dict(raw: dict, where: str) -> MaterialCatalog:
    entries = {}
    for i, rec in enumerate(raw.get("materials", ())):
        mat = _material_from_record(rec, f"{where}: materials[{i}]")
        if mat.name in entries:
            raise ConfigInvalid(f"{where}: materials[{i}]", f"duplicate material {mat.name!r}")
        entries[mat.name] = mat
    aliases = dict(raw.get("aliases", {}))
    for alias, target in aliases.items():
        if target not in entries:
            raise ConfigInvalid(f"{where}: aliases.{alias}", f"alias target {target!r} not in catalog")
    return MaterialCatalog(entries=entries, aliases=aliases)


_DEFAULT: MaterialCatalog | None = None


def default_catalog() -> MaterialCatalog:
    """The built-in catalog (cached; immutable)."""
    global _DEFAULT
    if _DEFAULT is None:
        text = resources.files("densewire").joinpath("data/materials.json").read_text("utf-8")
        _DEFAULT = _catalog_from_dict(json.loads(text), "data/materials.json")
    return _DEFAULT


def is_superconducting(m: Material, temperature: float) -> bool:
    """True iff the conductor has a critical temperature above `temperature`.

    Strict inequality: a conductor at exactly Tc is treated as normal.
    """
    if m.kind != CONDUCTOR:
        raise NotAConductor(m.name)
    return m.superconducting_Tc is not None and temperature < m.superconducting_Tc


def interpolate_conductivity(m: Material, temperature: float) -> float:
    """Thermal conductivity k(T) by log-log interpolation of the table.

    Cryogenic k(T) spans decades, so interpolation is linear in
    (log T, log k); temperatures at a table node return the node value.
    """
    table = m.thermal_conductivity_table
    if not table:
        raise OutOfRange(f"{m.name}: no thermal conductivity data")
    if temperature < table[0][0] or temperature > table[-1][0]:
        raise OutOfRange(
            f"{m.name}: T={temperature} K outside table range "
            f"[{table[0][0]}, {table[-1][0]}] K"
        )
    lo, hi = 0, len(table) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if table[mid][0] <= temperature:
            lo = mid
        else:
            hi = mid
    t0, k0 = table[lo]
    t1, k1 = table[hi]
    if temperature == t0:
        return k0
    if temperature == t1:
        return k1
    w = (math.log(temperature) - math.log(t0)) / (math.log(t1) - math.log(t0))
    return math.exp(math.log(k0) + w * (math.log(k1) - math.log(k0)))
