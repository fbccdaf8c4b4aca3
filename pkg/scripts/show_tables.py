#!/usr/bin/env python3
"""Print the intersection table of every two-dimensional test family,
with provenance (derived from the lattice, stated directly, or overridden).
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from tautverify.data import Repo
from tautverify.surfaces import audit_overrides

if __name__ == "__main__":
    repo = Repo(sys.argv[1]) if len(sys.argv) > 1 else Repo()
    for sid in ("S1", "S2", "S3", "T1", "T2", "T3", "V1", "V2", "V3", "V4"):
        space = repo.surface_space(sid)
        functional = repo.functional(sid)
        print(f"{sid}  (target {space.id})")
        for label in list(space.codim2_basis) + sorted(
            set(functional.values) - set(space.codim2_basis)
        ):
            value = functional.values[label]
            if value == 0:
                continue
            print(f"  {label:12s} {str(value):>8s}   [{functional.provenance[label]}]")
        flagged = [e for e in audit_overrides(repo.surface(sid), space) if e.status == "override"]
        for e in flagged:
            print(f"  note: {e.label} overrides the lattice value {e.derived}")
        print()
