"""Exponent calculus and periodic Navier-Stokes experiments.

Exponents are accepted as ints, strings ("3/2", "inf") or fractions.Fraction
and returned as Fraction, with math.inf for the infinite exponent.
"""

import json
import math
from fractions import Fraction

from . import _core

__all__ = [
    "bootstrap",
    "classify",
    "conjugate",
    "endgame",
    "general_scaling",
    "gradient_time_exponent",
    "ledger",
    "proof_theta",
    "region",
    "set_threads",
    "simulate",
    "sobolev",
    "star",
]


def _arg(x):
    if isinstance(x, float):
        if math.isinf(x) and x > 0:
            return "inf"
        raise TypeError("exponents must be exact; pass an int, Fraction or string")
    return str(x)


def _val(s):
    return math.inf if s == "inf" else Fraction(s)


def _pair(p):
    return (_val(p[0]), _val(p[1]))


def conjugate(q):
    return _val(_core.conjugate(_arg(q)))


def sobolev(q):
    """Returns (q*, finite_only); finite_only is set at q = 3."""
    value, finite_only = _core.sobolev(_arg(q))
    return _val(value), finite_only


def star(p):
    return _val(_core.star(_arg(p)))


def gradient_time_exponent(q):
    return _val(_core.gradient_time_exponent(_arg(q)))


def general_scaling(r, s, alpha):
    return Fraction(_core.general_scaling(_arg(r), _arg(s), _arg(alpha)))


def proof_theta(case, q):
    return Fraction(_core.proof_theta(case, _arg(q)))


def classify(kind, time, space):
    v = _core.classify(kind, _arg(time), _arg(space))
    for key, check in v.items():
        if isinstance(check, dict):
            for field in ("weight", "threshold", "margin"):
                check[field] = Fraction(check[field])
    if v["embedded_velocity"] is not None:
        v["embedded_velocity"] = _pair(v["embedded_velocity"])
    return v


def bootstrap(r, s, max_steps=64):
    t = _core.bootstrap(_arg(r), _arg(s), max_steps)
    t["gradient"] = [_pair(p) for p in t["gradient"]]
    t["forcing"] = [_pair(p) for p in t["forcing"]]
    return t


def endgame(s):
    e = _core.endgame(_arg(s))
    e["theta"] = Fraction(e["theta"])
    for key in ("lower", "upper", "target"):
        e[key] = _pair(e[key])
    return e


def region(points_per_axis):
    """Rows (1/q, 1/p, label) of the region diagram."""
    lines = _core.region_csv(points_per_axis).splitlines()[1:]
    rows = []
    for line in lines:
        inv_q, inv_p, label = line.split(",")
        rows.append((Fraction(inv_q), Fraction(inv_p), label))
    return rows


def _config_text(config):
    return config if isinstance(config, str) else json.dumps(config)


def simulate(config, out_dir):
    """Runs a simulation from a config dict or JSON string and writes snapshots to out_dir."""
    return _core.simulate(_config_text(config), str(out_dir))


def ledger(traj_dir, out_dir, config=None):
    """Energy ledger of a snapshot directory; ledger settings come from config["ledger"]."""
    return _core.ledger(str(traj_dir), _config_text(config or {}), str(out_dir))


def set_threads(threads):
    _core.set_threads(threads)
