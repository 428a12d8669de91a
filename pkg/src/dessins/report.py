"""JSON/CSV serialisation of reports and the on-disk lattice cache.

Everything emitted here is deterministic: keys are sorted, big integers are
decimal strings and nothing time-dependent goes into the payload.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
from pathlib import Path

from .census import CensusReport
from .group import GroupHandle
from .lattice import (MoebiusTable, SubgroupLattice, check_moebius_identity, lattice_from_dict,
                      lattice_to_dict, maximal_classes, moebius_table, enumerate_subgroups)
from .tsystems import TSystemReport
from .ucover import UCoverRecord

SCHEMA_VERSION = 1
CSV_FIELDS = ("class_id", "l", "m", "n", "genus", "commutator_order", "orbit_id")

log = logging.getLogger(__name__)


def group_to_dict(G: GroupHandle) -> dict:
    desc = G.descriptor
    return {
        "descriptor": G.label,
        "family": desc.family.value if desc is not None else None,
        "params": list(desc.params) if desc is not None else None,
        "degree": G.degree,
        "order": str(G.order),
    }


def mobius_summary(L: SubgroupLattice, M: MoebiusTable) -> dict:
    """Counts plus one mu value per conjugacy class of subgroups."""
    G = L.group
    rows = []
    for k, members in enumerate(L.classes):
        node = L.nodes[members[0]]
        rows.append({"class": k, "order": node.order, "class_size": len(members),
                     "mu": M[node.index], "maximal": node.is_maximal})
    return {
        "subgroups": len(L),
        "subgroup_classes": len(L.classes),
        "maximal_classes": [{"index": c.index, "class_size": c.class_size} for c in maximal_classes(L)],
        "nonzero_mu": sum(1 for nd in L.nodes if M[nd.index] != 0),
        "classes": rows,
        "group_order": str(G.order),
    }


def document(G: GroupHandle, census: CensusReport | None = None,
             tsystems: TSystemReport | None = None, ucover: UCoverRecord | None = None,
             ucover_orbits: list[UCoverRecord] | None = None, header: dict | None = None,
             **extra) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "header": header or {},
        "group": group_to_dict(G),
        "census": census.to_dict() if census is not None else None,
        "t_systems": tsystems.to_dict() if tsystems is not None else None,
        "universal_cover": ucover.to_dict() if ucover is not None else None,
        "universal_cover_orbits": [u.to_dict() for u in ucover_orbits] if ucover_orbits is not None else None,
    }
    doc.update(extra)
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def census_rows(census: CensusReport, tsystems: TSystemReport | None = None) -> list[dict]:
    rows = []
    for c in census.classes:
        l, m, n = c.type
        rows.append({"class_id": c.class_id, "l": l, "m": m, "n": n, "genus": c.genus,
                     "commutator_order": c.commutator_order,
                     "orbit_id": tsystems.orbit_of[c.class_id] if tsystems is not None else ""})
    return rows


def to_csv(rows: list[dict], fields: tuple[str, ...] | list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


# -- lattice cache ------------------------------------------------------------

def cache_file(cache_dir: str | os.PathLike, label: str) -> Path:
    return Path(cache_dir) / f"lattice-{label}-v{SCHEMA_VERSION}.json"


def _validate_cached(G: GroupHandle, L: SubgroupLattice, M: MoebiusTable | None) -> None:
    full = (1 << G.order) - 1
    if L.top.members != full or L.bottom.members != 1:
        raise ValueError("cached lattice has wrong top or bottom")
    for nd in L.nodes:
        if G.order % nd.order:
            raise ValueError(f"cached subgroup {nd.index} has order {nd.order} not dividing |G|")
    if M is None:
        raise ValueError("cached lattice has no Moebius values")
    check_moebius_identity(L, M)


def load_lattice(G: GroupHandle, cache_dir: str | os.PathLike | None) -> tuple[SubgroupLattice, MoebiusTable, bool]:
    """Lattice and mu table for G, from the cache when possible.

    Returns ``(lattice, mu, hit)``.  A missing cache directory disables
    caching; an unreadable or inconsistent entry is logged, recomputed and
    rewritten.
    """
    path = cache_file(cache_dir, G.label) if cache_dir else None
    if path is not None and path.exists():
        try:
            data = json.loads(path.read_text())
            if data.get("schema_version") != SCHEMA_VERSION or data.get("descriptor") != G.label:
                raise ValueError("cache entry is for a different descriptor or schema")
            L, M = lattice_from_dict(G, data["lattice"])
            _validate_cached(G, L, M)
            return L, M, True
        except Exception as exc:   # any defect means recompute
            log.warning("ignoring corrupt cache entry %s: %s", path, exc)
    L = enumerate_subgroups(G)
    M = moebius_table(L)
    if path is not None:
        store_lattice(path, G, L, M)
    return L, M, False


def store_lattice(path: Path, G: GroupHandle, L: SubgroupLattice, M: MoebiusTable) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps({"schema_version": SCHEMA_VERSION, "descriptor": G.label,
                               "lattice": lattice_to_dict(L, M)}, sort_keys=True))
    os.replace(tmp, path)

