"""Text, CSV and JSON formats for recurrence coefficients and chains.

Every float is written with 17 significant digits (``%.16e``) so that a
double survives the round trip bit for bit.  Writes go to a temporary file
in the target directory followed by a rename.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from pathlib import Path
from typing import Optional

import numpy as np

from chainmap.chain import ChainParameters, DiscretisedStarModel
from chainmap.orthopoly import Engine, RecurrenceCoefficients


def fmt(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.16e}"


def _json_value(v, indent: int) -> str:
    pad = " " * indent
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f'{pad} {json.dumps(str(k))}: {_json_value(v[k], indent + 1)}' for k in sorted(v)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(v, (list, tuple, np.ndarray)):
        v = list(v)
        if all(isinstance(x, (float, np.floating)) for x in v):
            return "[" + ", ".join(_json_float(x) for x in v) + "]"
        return "[" + ", ".join(_json_value(x, indent + 1) for x in v) + "]"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _json_float(v)
    if v is None:
        return "null"
    return json.dumps(str(v))


def _json_float(x) -> str:
    # JSON has no inf/nan literal; store those as strings
    s = fmt(x)
    return s if math.isfinite(float(x)) else json.dumps(s)


def dumps_json(obj) -> str:
    """Deterministic JSON with sorted keys and 17-digit floats."""
    return _json_value(obj, 0) + "\n"


def atomic_write(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# recurrence coefficients


def rc_to_text(rc: RecurrenceCoefficients) -> str:
    lines = [f"# engine={rc.engine.value} n={rc.n_terms}", "# alpha beta"]
    lines += [f"{fmt(a)} {fmt(b)}" for a, b in zip(rc.alpha, rc.beta)]
    return "\n".join(lines) + "\n"


def rc_from_text(text: str) -> RecurrenceCoefficients:
    engine = Engine.CLOSED_FORM
    alpha, beta = [], []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            for tok in line[1:].split():
                if tok.startswith("engine="):
                    engine = Engine(tok.split("=", 1)[1])
            continue
        a, b = line.split()
        alpha.append(float(a))
        beta.append(float(b))
    return RecurrenceCoefficients(alpha, beta, engine)


def rc_to_json(rc: RecurrenceCoefficients) -> str:
    return dumps_json({
        "engine": rc.engine.value,
        "n": rc.n_terms,
        "alpha": [float(v) for v in rc.alpha],
        "beta": [float(v) for v in rc.beta],
        "est_error": [float(v) for v in rc.est_error],
    })


def rc_from_json(text: str) -> RecurrenceCoefficients:
    d = json.loads(text)
    rc = RecurrenceCoefficients(d["alpha"], d["beta"], Engine(d["engine"]), d.get("est_error"))
    if rc.n_terms != d["n"]:
        raise ValueError(f"n={d['n']} but {rc.n_terms} coefficients stored")
    return rc


# ---------------------------------------------------------------------------
# chains


def provenance(cp: ChainParameters) -> dict:
    """Scalar provenance fields worth keeping next to a chain."""
    meta = cp.meta or {}
    out = {"source": cp.source}
    if "engine" in meta:
        out["engine"] = meta["engine"]
    if "quad_points" in meta:
        out["quad_points"] = int(meta["quad_points"])
    err = meta.get("est_error")
    if err is not None and np.size(err):
        out["est_error"] = float(np.max(err))
    for key in ("gauge", "requested", "n_modes", "cross_check", "cross_check_disagreement"):
        if key in meta:
            out[key] = meta[key]
    return out


def chain_to_csv(cp: ChainParameters, extra: Optional[dict] = None) -> str:
    lines = [f"# c0={fmt(cp.c0)} source={cp.source} g={fmt(cp.g)}"]
    prov = {**provenance(cp), **(extra or {})}
    prov.pop("source", None)
    if prov:
        lines.append("# " + " ".join(f"{k}={fmt(v) if isinstance(v, float) else str(v).replace(' ', '')}" for k, v in sorted(prov.items())))
    lines.append("n,omega,t")
    for n, om in enumerate(cp.omega):
        t = fmt(cp.t[n]) if n < len(cp.t) else ""
        lines.append(f"{n},{fmt(om)},{t}")
    return "\n".join(lines) + "\n"


def chain_from_csv(text: str) -> ChainParameters:
    head = {}
    omega, t = [], []
    for line in text.splitlines():
        if line.startswith("#"):
            for tok in line[1:].split():
                k, _, v = tok.partition("=")
                head.setdefault(k, v)
            continue
        if not line.strip() or line.startswith("n,"):
            continue
        _, om, tt = line.split(",")
        omega.append(float(om))
        if tt:
            t.append(float(tt))
    return ChainParameters(float(head["c0"]), omega, t, head.get("source", "unknown"), float(head["g"]))


def chain_to_json(cp: ChainParameters, extra: Optional[dict] = None) -> str:
    return dumps_json({
        "c0": cp.c0,
        "g": cp.g,
        "source": cp.source,
        "omega": [float(v) for v in cp.omega],
        "t": [float(v) for v in cp.t],
        "asymptote": None if cp.asymptote is None else [float(v) for v in cp.asymptote],
        "provenance": {**provenance(cp), **(extra or {})},
    })


def chain_from_json(text: str) -> ChainParameters:
    d = json.loads(text)
    asym = tuple(d["asymptote"]) if d.get("asymptote") else None
    return ChainParameters(d["c0"], d["omega"], d["t"], d["source"], d["g"], asym)


def star_to_csv(star: DiscretisedStarModel) -> str:
    lines = [f"# statistics={star.statistics}", "n,zeta,gamma"]
    lines += [f"{n},{fmt(z)},{fmt(g)}" for n, (z, g) in enumerate(zip(star.frequencies, star.couplings))]
    return "\n".join(lines) + "\n"


def star_to_json(star: DiscretisedStarModel) -> str:
    return dumps_json({
        "statistics": star.statistics,
        "zeta": [float(v) for v in star.frequencies],
        "gamma": [float(v) for v in star.couplings],
    })
