"""Rendering of decompositions and the golden-table regression driver."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path
from typing import Mapping

from .rep import Decomposition

TABLE_LAMBDAS = range(0, 8)


def render_mults(mults: Mapping[int, int]) -> str:
    """``2L(6)⊕3L(4)``: weights descending, multiplicity 1 omitted, ``0`` if empty."""
    terms = []
    for m in sorted((m for m, k in mults.items() if k), reverse=True):
        k = mults[m]
        terms.append(f"{k if k != 1 else ''}L({m})")
    return "⊕".join(terms) if terms else "0"


def render_table(dec: Decomposition) -> str:
    """One row per degree, in degree order."""
    trimmed = dec.trimmed()
    return "\n".join(render_mults(trimmed[d]) for d in trimmed.degrees())


def render_with_footer(dec: Decomposition) -> str:
    return render_table(dec) + f"\ndim = {dec.total_dim}\n"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def golden_dir() -> Path:
    env = os.environ.get("WEYLKIT_GOLDEN_DIR")
    if env:
        return Path(env)
    return Path(str(resources.files("weylkit") / "golden"))


def _table_job(args):
    kind, la = args
    from .lie import build_h2
    from .weyl import compute_global_weyl, compute_local_weyl
    fn = compute_global_weyl if kind == "global" else compute_local_weyl
    res = fn(build_h2(), la)
    return kind, la, dumps(res.to_json()), render_with_footer(res.decomposition)


def table_artifacts(jobs: int = 1) -> dict[str, str]:
    """File name -> content for the global and local tables of ``L_0(H_2)``, ``la = 0..7``."""
    work = [(k, la) for k in ("global", "local") for la in TABLE_LAMBDAS]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_table_job, work))
    else:
        results = [_table_job(w) for w in work]
    out = {}
    for kind, la, js, table in results:
        out[f"tables/{kind}_h2_{la}.json"] = js
        out[f"tables/{kind}_h2_{la}.txt"] = table
    return out


def diff_against(artifacts: Mapping[str, str], root: Path) -> list[str]:
    """Names of artifacts missing from ``root`` or differing byte-for-byte."""
    bad = []
    for name, content in sorted(artifacts.items()):
        p = root / name
        if not p.exists() or p.read_bytes() != content.encode("utf-8"):
            bad.append(name)
    return bad


def write_artifacts(artifacts: Mapping[str, str], root: Path) -> None:
    for name, content in artifacts.items():
        p = root / name
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_bytes(content.encode("utf-8"))
