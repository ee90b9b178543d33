"""Command-line front end: one dispatcher, one subcommand per module.

Runs are configured by an INI-style file (flat key = value entries grouped
in per-module sections) plus ``--set section.key=value`` overrides; unknown
keys are rejected rather than silently ignored.  Every output starts with
the fully resolved configuration (comment lines in CSV, a "config" object
in JSON), so any artifact can be re-run to byte-identical results.  Floats
are rendered with 12 significant digits everywhere.

Exit codes: 0 success, 2 config error, 3 domain error, 4 scan with every
run censored, 5 report with missing inputs.
"""

from __future__ import annotations

import argparse
import configparser
import io
import json
import math
import os
import sys

import numpy as np

from . import exponents as expmod
from . import iteration as itmod
from . import pde_solver as pde
from . import testfun as tfmod
from . import tricomi_ode as ode
from .errors import ConfigError, DomainError
from .specfun import kummer_m_detail, kummer_m_deriv, log_gamma, varphi

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_CENSORED = 4
EXIT_REPORT_GAP = 5

OUTDIR_ENV = "TRICOMILAB_OUTDIR"


def fmt(x) -> str:
    """Deterministic 12-significant-digit rendering of floats."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12g}"
    return str(x)


def _round_floats(obj):
    if isinstance(obj, dict):
        return {k: _round_floats(obj[k]) for k in obj}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        if math.isfinite(f):
            return float(f"{f:.12g}")
        return None if math.isnan(f) else ("inf" if f > 0 else "-inf")
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


def dump_json(payload: dict) -> str:
    return json.dumps(_round_floats(payload), sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# configuration schema and resolution
# ---------------------------------------------------------------------------

# schema[command][section][key] = (type, default); REQUIRED means no default
REQUIRED = object()

_SCHEMA = {
    "specfun": {
        "specfun": {
            "op": (str, "kummer"),
            "a": (float, 0.25),
            "b": (float, 0.5),
            "z": (float, -1.0),
            "n": (int, 3),
            "r": (float, 1.0),
            "x": (float, 1.0),
        }
    },
    "odecheck": {
        "odecheck": {
            "m": (float, 1.0),
            "lambda": (float, 1.0),
            "t": (float, 2.0),
            "s": (float, -1.0),  # negative -> propagators not evaluated
            "oracle_rtol": (float, 1e-10),
        }
    },
    "testfun": {
        "testfun": {
            "m": (float, 1.0),
            "n": (int, 3),
            "q": (float, float("nan")),  # nan -> q_choice(n, p_crit(m,n))
            "lambda0": (float, 0.5),
            "big_r": (float, 1.0),
            "t_max": (float, 1e3),
            "nt": (int, 9),
            "ns": (int, 3),
            "nx": (int, 3),
            "rtol": (float, 1e-8),
        }
    },
    "exponents": {
        "exponents": {
            "m": (float, REQUIRED),
            "n": (int, REQUIRED),
            "p": (float, float("nan")),  # nan -> p_crit(m,n)
            "eps": (float, float("nan")),
            "constant": (float, 1.0),
        }
    },
    "iterate": {
        "iterate": {
            "mode": (str, "subcritical"),
            "m": (float, 1.0),
            "n": (int, 1),
            "p": (float, float("nan")),  # nan -> p_crit for critical mode
            "eps": (float, 0.1),
            "t0": (float, 0.0),
            "jmax": (int, 40),
            "c0": (float, 1.0),
            "c2": (float, 1.0),
            "c": (float, 1.0),
            "b1": (float, 1.0),
            "ceiling_log": (float, 30.0),
        }
    },
    "simulate": {
        "model": {
            "m": (float, REQUIRED),
            "n": (int, REQUIRED),
            "p": (float, REQUIRED),
            "big_r": (float, 1.0),
            "eps": (float, 1.0),
        },
        "grid": {
            "dx": (float, 0.02),
            "t_max": (float, 10.0),
            "cfl_safety": (float, 0.4),
            "blowup_threshold": (float, 1e8),
            "domain_radius": (float, float("nan")),
            "profile": (str, "bump"),
            "u1_mode": (str, "same"),
            "linear_only": (bool, False),
            "track_f": (bool, True),
            "n_f_samples": (int, 64),
        },
    },
    "scan": {
        "model": {
            "m": (float, REQUIRED),
            "n": (int, REQUIRED),
            "p": (float, REQUIRED),
            "big_r": (float, 1.0),
            "eps": (float, 1.0),
        },
        "grid": {
            "dx": (float, 0.02),
            "t_max": (float, 40.0),
            "cfl_safety": (float, 0.4),
            "blowup_threshold": (float, 1e8),
            "domain_radius": (float, float("nan")),
            "profile": (str, "bump"),
            "u1_mode": (str, "same"),
            "linear_only": (bool, False),
            "track_f": (bool, False),
            "n_f_samples": (int, 64),
        },
        "scan": {
            "eps_list": (str, REQUIRED),  # comma-separated
            "fit_mode": (str, "subcritical"),
        },
    },
    "report": {"report": {}},
}


def _coerce(raw: str, typ, key: str):
    try:
        if typ is bool:
            low = raw.strip().lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        return typ(raw)
    except ValueError as exc:
        raise ConfigError(f"cannot parse value for {key!r}: {raw!r}") from exc


def resolve_config(command: str, config_path: str | None, overrides: list[str]) -> dict:
    """Merge file + overrides against the schema; reject unknown keys."""
    schema = _SCHEMA[command]
    values = {
        sec: {k: (None if d is REQUIRED else d) for k, (t, d) in keys.items()}
        for sec, keys in schema.items()
    }
    provided: list[tuple[str, str, str]] = []
    if config_path:
        parser = configparser.ConfigParser()
        read = parser.read(config_path)
        if not read:
            raise ConfigError(f"config file not found: {config_path}")
        for sec in parser.sections():
            for key, raw in parser.items(sec):
                provided.append((sec, key, raw))
    for item in overrides:
        if "=" not in item or "." not in item.split("=", 1)[0]:
            raise ConfigError(f"override must look like section.key=value, got {item!r}")
        addr, raw = item.split("=", 1)
        sec, key = addr.split(".", 1)
        provided.append((sec.strip(), key.strip(), raw.strip()))
    for sec, key, raw in provided:
        if sec not in schema:
            raise ConfigError(f"unknown config section {sec!r} for command {command!r}")
        if key not in schema[sec]:
            raise ConfigError(f"unknown config key {sec}.{key!r} for command {command!r}")
        typ = schema[sec][key][0]
        values[sec][key] = _coerce(raw, typ, f"{sec}.{key}")
    for sec, keys in schema.items():
        for key, (typ, default) in keys.items():
            if default is REQUIRED and values[sec][key] is None:
                raise ConfigError(f"missing required config key {sec}.{key}")
    return values


def config_lines(command: str, cfg: dict) -> list[str]:
    lines = [f"# command = {command}"]
    for sec in sorted(cfg):
        for key in sorted(cfg[sec]):
            lines.append(f"# {sec}.{key} = {fmt(cfg[sec][key])}")
    return lines


def config_echo(command: str, cfg: dict) -> dict:
    return {
        "command": command,
        **{sec: {k: cfg[sec][k] for k in sorted(cfg[sec])} for sec in sorted(cfg)},
    }


# ---------------------------------------------------------------------------
# output plumbing
# ---------------------------------------------------------------------------


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not os.path.isabs(path):
        path = os.path.join(outdir, path)
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _csv(header_lines: list[str], columns: list[str], rows: list[tuple]) -> str:
    buf = io.StringIO()
    for line in header_lines:
        buf.write(line + "\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------


def _cmd_specfun(cfg: dict, out: str | None, fmt_kind: str) -> int:
    c = cfg["specfun"]
    op = c["op"]
    if op == "kummer":
        detail = kummer_m_detail(c["a"], c["b"], c["z"])
        payload = {
            "op": op,
            "a": c["a"],
            "b": c["b"],
            "z": c["z"],
            "value": detail.value,
            "regime": detail.regime,
            "error_estimate": detail.error_estimate,
        }
    elif op == "kummer_deriv":
        payload = {
            "op": op,
            "a": c["a"],
            "b": c["b"],
            "z": c["z"],
            "value": kummer_m_deriv(c["a"], c["b"], c["z"]),
            "regime": "derivative",
            "error_estimate": None,
        }
    elif op == "varphi":
        payload = {
            "op": op,
            "n": c["n"],
            "r": c["r"],
            "value": varphi(c["n"], c["r"]),
            "regime": "closed-form" if c["n"] <= 3 else "bessel",
            "error_estimate": None,
        }
    elif op == "log_gamma":
        payload = {
            "op": op,
            "x": c["x"],
            "value": log_gamma(c["x"]),
            "regime": "lgamma",
            "error_estimate": None,
        }
    else:
        raise ConfigError(f"unknown specfun op {op!r}")
    if fmt_kind == "json":
        _write(out, dump_json({"config": config_echo("specfun", cfg), **payload}))
    else:
        cols = sorted(payload)
        _write(
            out,
            _csv(config_lines("specfun", cfg), cols, [tuple(payload[k] for k in cols)]),
        )
    return EXIT_OK


def _cmd_odecheck(cfg: dict, out: str | None, fmt_kind: str) -> int:
    c = cfg["odecheck"]
    params = ode.OdeParams(c["m"], c["lambda"])
    t = c["t"]
    pair = ode.fundamental_pair(params, t)
    scaled = ode.fundamental_pair_scaled(params, t)
    w1 = ode.ode_oracle_scaled(params, t, (1.0, 0.0), rtol=c["oracle_rtol"])
    w2 = ode.ode_oracle_scaled(params, t, (0.0, 1.0), rtol=c["oracle_rtol"])
    dev = max(
        abs(scaled.v1 / w1[0] - 1.0) if w1[0] else abs(scaled.v1 - w1[0]),
        abs(scaled.v2 / w2[0] - 1.0) if w2[0] else abs(scaled.v2 - w2[0]),
    )
    growth = params.lam * ode.phi_of_t(params.m, t)
    payload = {
        "m": c["m"],
        "lambda": c["lambda"],
        "t": t,
        "v1": pair.v1,
        "dv1": pair.dv1,
        "v2": pair.v2,
        "dv2": pair.dv2,
        "wronskian_residual": scaled.v1 * scaled.dv2
        - scaled.dv1 * scaled.v2
        - math.exp(-2.0 * growth),
        "oracle_rel_deviation": dev,
    }
    if c["s"] >= 0:
        payload["phi1"] = ode.phi1(t, c["s"], params)
        payload["phi2"] = ode.phi2(t, c["s"], params)
        payload["phi2_ratio"] = ode.phi2_ratio(t, c["s"], params)
    if fmt_kind == "json":
        _write(out, dump_json({"config": config_echo("odecheck", cfg), **payload}))
    else:
        cols = sorted(payload)
        _write(
            out,
            _csv(config_lines("odecheck", cfg), cols, [tuple(payload[k] for k in cols)]),
        )
    return EXIT_OK


def _cmd_exponents(cfg: dict, out: str | None, fmt_kind: str) -> int:
    c = cfg["exponents"]
    pc = expmod.p_crit(c["m"], c["n"])
    p = pc if math.isnan(c["p"]) else c["p"]
    ctx = expmod.ExponentContext(c["m"], c["n"], p)
    it = expmod.iteration_exponents(ctx)
    res1, res2 = expmod.critical_identities(ctx)
    payload = {
        "m": c["m"],
        "n": c["n"],
        "p": p,
        "gamma": expmod.gamma_mnp(ctx),
        "p_crit": pc,
        "mu": it.mu,
        "alpha_it": it.alpha_it,
        "beta_it": it.beta_it,
        "q_choice": expmod.q_choice(c["n"], p),
        "identity_residual_frame": res1,
        "identity_residual_initiate": res2,
    }
    if not math.isnan(c["eps"]):
        payload["eps"] = c["eps"]
        payload["lifespan_bound"] = expmod.lifespan_prediction(ctx, c["eps"], c["constant"])
    doc = {"config": config_echo("exponents", cfg), **payload}
    if fmt_kind == "csv":
        cols = sorted(payload)
        _write(
            out,
            _csv(config_lines("exponents", cfg), cols, [tuple(payload[k] for k in cols)]),
        )
    else:
        _write(out, dump_json(doc))
    return EXIT_OK


def _cmd_testfun(cfg: dict, out: str | None, fmt_kind: str) -> int:
    c = cfg["testfun"]
    q = c["q"]
    if math.isnan(q):
        q = expmod.q_choice(c["n"], expmod.p_crit(c["m"], c["n"]))
    params = tfmod.TestFnParams(
        q=q, lambda0=c["lambda0"], R=c["big_r"], n=c["n"], m=c["m"]
    )
    grid = tfmod.Lemma22Grid.log_default(
        t_max=c["t_max"], nt=c["nt"], ns=c["ns"], nx=c["nx"]
    )
    report = tfmod.lemma22_report(params, grid, rtol=c["rtol"])
    header = config_lines("testfun", cfg)
    header.append(f"# resolved.q = {fmt(q)}")
    for part in sorted(report.constants):
        header.append(f"# constant.{part} = {fmt(report.constants[part])}")
    header.append(f"# excluded_points = {report.excluded}")
    rows = [
        (r.part, r.t, r.s, r.x_norm, r.value, r.envelope, r.ratio)
        for r in report.rows
    ]
    if fmt_kind == "json":
        _write(
            out,
            dump_json(
                {
                    "config": config_echo("testfun", cfg),
                    "resolved_q": q,
                    "constants": report.constants,
                    "excluded_points": report.excluded,
                    "rows": [
                        dict(
                            part=r.part,
                            t=r.t,
                            s=r.s,
                            x_norm=r.x_norm,
                            value=r.value,
                            envelope=r.envelope,
                            ratio=r.ratio,
                        )
                        for r in report.rows
                    ],
                }
            ),
        )
    else:
        _write(
            out,
            _csv(header, ["part", "t", "s", "x_norm", "value", "envelope", "ratio"], rows),
        )
    return EXIT_OK


def _cmd_iterate(cfg: dict, out: str | None, fmt_kind: str) -> int:
    c = cfg["iterate"]
    mode = c["mode"]
    if mode not in ("subcritical", "critical"):
        raise ConfigError(f"iterate.mode must be subcritical or critical, got {mode!r}")
    pc = expmod.p_crit(c["m"], c["n"])
    p = c["p"]
    if math.isnan(p):
        p = pc if mode == "critical" else 0.5 * (1.0 + pc)
    ctx = expmod.ExponentContext(c["m"], c["n"], p)
    header = config_lines("iterate", cfg)
    header.append(f"# resolved.p = {fmt(p)}")
    if mode == "subcritical":
        d1 = c["c2"] * c["eps"] ** p
        seq = itmod.subcritical_run(ctx, d1=d1, t0=c["t0"], jmax=c["jmax"], c0=c["c0"])
        log_t = itmod.threshold_time_log_scan(seq)
        t_closed = itmod.j_threshold_time(seq)
        header.append(f"# threshold.log_t_scan = {fmt(log_t)}")
        header.append(f"# threshold.t_closed_form = {fmt(t_closed)}")
        rows = [
            (int(j), seq.a_j[j - 1], seq.b_j[j - 1], seq.log_d_j[j - 1], None)
            for j in seq.j_index
        ]
    else:
        seq = itmod.critical_run(
            ctx, eps=c["eps"], c=c["c"], c0=c["c0"], b1=c["b1"], jmax=c["jmax"]
        )
        log_t = itmod.critical_divergence_log_time(seq, ceiling_log=c["ceiling_log"])
        header.append(f"# threshold.log_t_scan = {fmt(log_t)}")
        rows = [
            (
                int(j),
                seq.a_j[j - 1],
                seq.b_j[j - 1],
                seq.log_c_j[j - 1],
                seq.l_j[j - 1],
            )
            for j in seq.j_index
        ]
    cols = ["j", "a_j", "b_j", "log_d_or_c_j", "l_j"]
    if fmt_kind == "json":
        _write(
            out,
            dump_json(
                {
                    "config": config_echo("iterate", cfg),
                    "resolved_p": p,
                    "threshold_log_t": log_t,
                    "rows": [dict(zip(cols, r)) for r in rows],
                }
            ),
        )
    else:
        _write(out, _csv(header, cols, rows))
    return EXIT_OK


def _build_run_config(cfg: dict) -> pde.RunConfig:
    mc, gc = cfg["model"], cfg["grid"]
    model = pde.ModelParams(mc["m"], mc["n"], mc["p"], R=mc["big_r"], eps=mc["eps"])
    domain = gc["domain_radius"]
    return pde.RunConfig(
        model=model,
        dx=gc["dx"],
        t_max=gc["t_max"],
        cfl_safety=gc["cfl_safety"],
        blowup_threshold=gc["blowup_threshold"],
        domain_radius=None if math.isnan(domain) else domain,
        profile=gc["profile"],
        u1_mode=gc["u1_mode"],
        linear_only=gc["linear_only"],
        track_f=gc["track_f"],
        n_f_samples=gc["n_f_samples"],
    )


def _cmd_simulate(cfg: dict, out: str | None, fmt_kind: str) -> int:
    run_cfg = _build_run_config(cfg)
    record, series = pde.run_until_blowup(run_cfg)
    header = config_lines("simulate", cfg)
    header.append(f"# result.t_blowup = {fmt(record.t_blowup)}")
    header.append(f"# result.censored = {fmt(record.censored)}")
    header.append(f"# result.peak = {fmt(record.peak)}")
    header.append(f"# result.threshold_sensitivity = {fmt(record.threshold_sensitivity)}")
    f_map = dict(zip(series.f_times.tolist(), series.f_values.tolist()))
    rows = []
    for i, t in enumerate(series.t.tolist()):
        rows.append(
            (
                t,
                series.max_u[i],
                series.g[i],
                f_map.get(t),
                series.support_radius[i],
            )
        )
    if fmt_kind == "json":
        _write(
            out,
            dump_json(
                {
                    "config": config_echo("simulate", cfg),
                    "result": {
                        "t_blowup": record.t_blowup,
                        "censored": record.censored,
                        "peak": record.peak,
                        "threshold_sensitivity": record.threshold_sensitivity,
                    },
                    "series": {
                        "t": series.t.tolist(),
                        "max_u": series.max_u.tolist(),
                        "g": series.g.tolist(),
                        "support_radius": series.support_radius.tolist(),
                        "f_times": series.f_times.tolist(),
                        "f_values": series.f_values.tolist(),
                    },
                }
            ),
        )
    else:
        _write(
            out,
            _csv(header, ["t", "max_u", "g", "f", "support_radius"], rows),
        )
    return EXIT_OK


def _cmd_scan(cfg: dict, out: str | None, fmt_kind: str, fit_out: str | None) -> int:
    run_cfg = _build_run_config(cfg)
    sc = cfg["scan"]
    try:
        eps_values = [float(tok) for tok in sc["eps_list"].split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"cannot parse scan.eps_list: {sc['eps_list']!r}") from exc
    if not eps_values:
        raise ConfigError("scan.eps_list is empty")
    records = pde.lifespan_scan(run_cfg, eps_values)
    header = config_lines("scan", cfg)
    rows = [
        (r.eps, r.t_blowup, r.censored, r.peak, r.threshold_sensitivity)
        for r in records
    ]
    _write(
        out,
        _csv(
            header,
            ["eps", "t_blowup", "censored", "peak", "threshold_sensitivity"],
            rows,
        ),
    )
    all_censored = all(r.censored for r in records)
    fit_payload: dict = {"config": config_echo("scan", cfg), "kind": "lifespan_fit"}
    try:
        fit = pde.fit_scaling(records, sc["fit_mode"])
        md = run_cfg.model
        ctx = expmod.ExponentContext(md.m, md.n, md.p)
        g = expmod.gamma_mnp(ctx)
        theory = (
            -2.0 * md.p * (md.p - 1.0) / g
            if sc["fit_mode"] == "subcritical"
            else -md.p * (md.p - 1.0)
        )
        fit_payload["fit"] = {
            "slope": fit.slope,
            "intercept": fit.intercept,
            "residual": fit.residual,
            "n_used": fit.n_used,
            "theory_slope": theory,
            "note": fit.note,
        }
    except DomainError as exc:
        fit_payload["fit"] = None
        fit_payload["fit_error"] = str(exc)
    _write(fit_out if fit_out else None, dump_json(fit_payload))
    return EXIT_CENSORED if all_censored else EXIT_OK


_REPORT_CHECKS = {
    "identity_residual_frame": ("abs_le", 1e-10),
    "identity_residual_initiate": ("abs_le", 1e-10),
    "wronskian_residual": ("abs_le", 1e-8),
    "oracle_rel_deviation": ("abs_le", 1e-6),
}


def _cmd_report(paths: list[str], out: str | None) -> int:
    if not paths:
        sys.stderr.write("report: no input files given\n")
        return EXIT_REPORT_GAP
    missing = [p for p in paths if not os.path.exists(p)]
    if missing:
        sys.stderr.write("report: missing inputs: " + ", ".join(missing) + "\n")
        return EXIT_REPORT_GAP
    checks = []
    for path in paths:
        with open(path, "r", encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError:
                sys.stderr.write(f"report: {path} is not JSON\n")
                return EXIT_REPORT_GAP
        for key, (kind, tol) in _REPORT_CHECKS.items():
            if key in doc and doc[key] is not None:
                value = float(doc[key])
                checks.append(
                    {
                        "source": os.path.basename(path),
                        "name": key,
                        "value": value,
                        "tolerance": tol,
                        "pass": abs(value) <= tol,
                    }
                )
        fit = doc.get("fit")
        if isinstance(fit, dict) and fit.get("slope") is not None:
            theory = fit.get("theory_slope")
            ok = (
                theory is not None
                and abs(fit["slope"] - theory) <= 0.2 * abs(theory)
            )
            checks.append(
                {
                    "source": os.path.basename(path),
                    "name": "fit_slope_vs_theory",
                    "value": fit["slope"],
                    "tolerance": None if theory is None else 0.2 * abs(theory),
                    "pass": bool(ok),
                }
            )
    if not checks:
        sys.stderr.write("report: inputs contained nothing checkable\n")
        return EXIT_REPORT_GAP
    summary = {
        "inputs": [os.path.basename(p) for p in paths],
        "checks": checks,
        "overall_pass": all(c["pass"] for c in checks),
    }
    _write(out, dump_json(summary))
    return EXIT_OK


# ---------------------------------------------------------------------------
# dispatcher
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tricomilab",
        description="Numerical laboratory for the semilinear generalized "
        "Tricomi equation u_tt - t^m Lap(u) = |u|^p.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("specfun", "odecheck", "testfun", "exponents", "iterate", "simulate", "scan"):
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="INI config file")
        p.add_argument(
            "--set",
            dest="overrides",
            action="append",
            default=[],
            metavar="SECTION.KEY=VALUE",
            help="override one config entry (repeatable)",
        )
        p.add_argument("--output", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        if name == "scan":
            p.add_argument("--fit-output", default=None, help="fit JSON path")
    rep = sub.add_parser("report")
    rep.add_argument("inputs", nargs="*", help="prior JSON outputs to merge")
    rep.add_argument("--output", default=None)
    return parser


def dispatch(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses code 2 for usage errors, which matches EXIT_CONFIG
        return int(exc.code) if exc.code else EXIT_OK
    try:
        if args.command == "report":
            return _cmd_report(args.inputs, args.output)
        cfg = resolve_config(args.command, args.config, args.overrides)
        default_fmt = {"exponents": "json"}.get(args.command, "csv")
        fmt_kind = args.format or default_fmt
        if args.command == "specfun":
            return _cmd_specfun(cfg, args.output, fmt_kind)
        if args.command == "odecheck":
            return _cmd_odecheck(cfg, args.output, fmt_kind)
        if args.command == "testfun":
            return _cmd_testfun(cfg, args.output, fmt_kind)
        if args.command == "exponents":
            return _cmd_exponents(cfg, args.output, fmt_kind)
        if args.command == "iterate":
            return _cmd_iterate(cfg, args.output, fmt_kind)
        if args.command == "simulate":
            return _cmd_simulate(cfg, args.output, fmt_kind)
        if args.command == "scan":
            return _cmd_scan(cfg, args.output, fmt_kind, args.fit_output)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except DomainError as exc:
        sys.stderr.write(f"domain error: {exc}\n")
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
