"""Command-line front end.

One subcommand per pipeline stage.  Every run writes a machine-readable
artifact (JSON or CSV) to the output path and prints a one-line summary to
stdout.  JSON artifacts embed the resolved configuration and the library
version so a result file is self-describing; identical configuration and seed
give byte-identical artifacts.

Settings come from three layers, later layers winning: built-in defaults,
an optional config file (``--config``), then explicit command-line flags.
Config files use ``key = value`` lines with optional ``[subcommand]`` section
headers; keys outside any section apply to every subcommand that knows them.
Validation reports every problem found, not just the first.

Exit codes: 0 success, 1 requested tolerance not met, 2 any other error
(bad configuration, domain, capacity).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__, decimation, poincare, selfsim, sggraph, zeta
from . import walk as walkmod
from .errors import AccuracyError, ConfigError, DomainError, FracspecError

DEFAULT_SEED = walkmod.DEFAULT_SEED


# --- option schema ---
# One table drives both the argparse flags and the config-file validator so
# the two entry points accept exactly the same keys with the same checks.

@dataclass(frozen=True)
class Opt:
    name: str                      # config key and long flag (without --)
    typ: type                      # float, int, str or bool
    default: object
    help: str
    choices: tuple | None = None
    lo: float | None = None        # inclusive bound for numbers
    hi: float | None = None
    positive: bool = False         # strict > 0


def _opt_bc() -> Opt:
    return Opt("bc", str, "dirichlet", "boundary condition",
               choices=("dirichlet", "neumann"))


def _opt_system() -> Opt:
    return Opt("system", str, "sg", "decimation system",
               choices=("sg", "cheb"))


def _opt_seed() -> Opt:
    return Opt("seed", int, DEFAULT_SEED, "PRNG seed", lo=0)


def _opt_tol(default: float) -> Opt:
    return Opt("tol", float, default, "error-bound target", positive=True)


# Per-subcommand options, excluding the global out/format/config/threads.
SCHEMA: dict[str, tuple[Opt, ...]] = {
    "dim": (
        Opt("ratios", str, "0.5,0.5,0.5",
            "comma-separated contraction ratios"),
    ),
    "vn": (
        Opt("level", int, 3, "refinement level", lo=0, hi=10),
    ),
    "graph-eigs": (
        Opt("level", int, 3, "graph level", lo=0, hi=6),
        _opt_bc(),
    ),
    "restrict-form": (
        Opt("conductance", float, 1.0, "edge conductance", positive=True),
    ),
    "walk": (
        Opt("level", int, 1, "graph level", lo=0, hi=6),
        Opt("samples", int, 100_000, "number of walkers", lo=1),
        _opt_seed(),
    ),
    "phi": (
        _opt_system(),
        Opt("theta", float, 0.0, "ray angle in radians"),
        Opt("t-lo", float, 4.0, "lower edge of the log-radius window"),
        Opt("t-hi", float, 8.0, "upper edge of the log-radius window"),
        Opt("samples", int, 241, "profile sample count", lo=16),
    ),
    "spiral": (
        _opt_system(),
        Opt("z0", float, 10.0, "backward-orbit anchor", positive=True),
    ),
    "julia": (
        _opt_system(),
        Opt("depth", int, 50, "backward-iteration depth", lo=5, hi=200),
        Opt("samples", int, 2000, "sample count", lo=10),
        _opt_seed(),
    ),
    "spectrum": (
        _opt_system(),
        _opt_bc(),
        Opt("cutoff", float, 1000.0, "largest eigenvalue kept",
            positive=True),
    ),
    "count": (
        _opt_bc(),
        Opt("x-lo", float, 10.0, "smallest abscissa", positive=True),
        Opt("x-hi", float, 1e5, "largest abscissa", positive=True),
        Opt("points", int, 121, "log-spaced sample count", lo=2),
    ),
    "renewal": (
        Opt("ratios", str, "", "comma-separated contraction ratios"),
    ),
    "zeta": (
        _opt_system(),
        _opt_bc(),
        Opt("w", float, None, "seed of a single decimation family "
            "(omit for the assembled zeta function)"),
        Opt("s", str, "-0.5",
            "evaluation point, real or complex (e.g. -0.5 or -0.5+2j)"),
        _opt_tol(1e-7),
    ),
    "casimir": (
        _opt_bc(),
        _opt_tol(1e-6),
    ),
    "heat-trace": (
        _opt_bc(),
        Opt("t-lo", float, 1e-4, "smallest time", positive=True),
        Opt("t-hi", float, 1e-3, "largest time", positive=True),
        Opt("cutoff", float, 2e6, "spectrum enumeration cutoff",
            positive=True),
        Opt("per-period", int, 16, "samples per factor-of-lambda period",
            lo=2, hi=256),
    ),
}

# Artifact format per subcommand; "csv" ones are curves or tables.
DEFAULT_FORMAT = {name: "json" for name in SCHEMA}
for _name in ("vn", "graph-eigs", "spectrum", "count", "heat-trace"):
    DEFAULT_FORMAT[_name] = "csv"

CSV_HEADERS = {
    "vn": ("x", "y"),
    "graph-eigs": ("value", "multiplicity"),
    "spectrum": ("mu", "multiplicity", "m", "w", "word"),
    "count": ("x", "N", "scaledN"),
    "heat-trace": ("t", "K", "scaledK"),
}

_GLOBAL_KEYS = ("out", "format", "threads")


@dataclass
class RunConfig:
    """Fully resolved settings for one subcommand invocation."""

    subcommand: str
    values: dict = field(default_factory=dict)
    out: str | None = None
    fmt: str | None = None         # None means the subcommand default
    threads: int = 1

    def get(self, key: str):
        return self.values[key]

    def resolved_format(self) -> str:
        return self.fmt or DEFAULT_FORMAT[self.subcommand]

    def resolved_out(self) -> str:
        if self.out:
            return self.out
        return f"fracspec_{self.subcommand.replace('-', '_')}.{self.resolved_format()}"

    def echo(self) -> dict:
        """Configuration block embedded in JSON artifacts."""
        d = {"subcommand": self.subcommand, "out": self.resolved_out(),
             "format": self.resolved_format(), "threads": self.threads}
        d.update(self.values)
        return d


def _coerce(opt: Opt, raw: str, where: str, problems: list[str]):
    """Parse one raw string against the schema; append problems, return value."""
    if opt.typ is str:
        val = raw.strip()
        if opt.choices and val not in opt.choices:
            problems.append(f"{where}: {opt.name!r} must be one of "
                            f"{', '.join(opt.choices)}; got {val!r}")
            return None
        return val
    try:
        val = opt.typ(raw)
    except ValueError:
        problems.append(f"{where}: {opt.name!r} expects "
                        f"{opt.typ.__name__}; got {raw!r}")
        return None
    if opt.positive and not val > 0:
        problems.append(f"{where}: {opt.name!r} must be > 0; got {val}")
        return None
    if opt.lo is not None and val < opt.lo:
        problems.append(f"{where}: {opt.name!r} must be >= {opt.lo}; got {val}")
        return None
    if opt.hi is not None and val > opt.hi:
        problems.append(f"{where}: {opt.name!r} must be <= {opt.hi}; got {val}")
        return None
    return val


def parse_config(text: str, subcommand: str | None = None) -> RunConfig:
    """Parse a config file into a RunConfig, collecting every problem.

    Lines are ``key = value``; ``[name]`` opens a section whose keys apply
    only when that subcommand runs; a ``subcommand`` key outside any section
    (or the argument of this function) selects which one that is.  Unknown
    keys, unparseable numbers, and out-of-range values are all reported in a
    single ConfigError.
    """
    problems: list[str] = []
    entries: list[tuple[int, str, str, str]] = []   # (line, section, key, raw)
    section = ""
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("[") and body.endswith("]"):
            section = body[1:-1].strip()
            if section not in SCHEMA:
                problems.append(f"line {lineno}: unknown section [{section}]")
            continue
        if "=" not in body:
            problems.append(f"line {lineno}: expected 'key = value', "
                            f"got {body!r}")
            continue
        key, raw = (part.strip() for part in body.split("=", 1))
        entries.append((lineno, section, key, raw))

    declared = next((raw for _, sec, key, raw in entries
                     if key == "subcommand" and not sec), None)
    sub = subcommand or declared
    if sub is None:
        problems.append("no subcommand: pass one on the command line or set "
                        "'subcommand = ...' in the file")
    elif sub not in SCHEMA:
        problems.append(f"unknown subcommand {sub!r}")
        sub = None
    if sub is not None and declared is not None and declared != sub:
        problems.append(f"config file is for subcommand {declared!r}, "
                        f"but {sub!r} was requested")

    cfg = RunConfig(subcommand=sub or "", values=_defaults(sub) if sub else {})
    opts = {o.name: o for o in SCHEMA.get(sub, ())}
    for lineno, sec, key, raw in entries:
        where = f"line {lineno}"
        if key == "subcommand" and not sec:
            continue
        if sec and sec != sub:
            continue                      # other subcommand's section
        if key == "out":
            cfg.out = raw
        elif key == "format":
            if raw not in ("json", "csv"):
                problems.append(f"{where}: 'format' must be json or csv; "
                                f"got {raw!r}")
            else:
                cfg.fmt = raw
        elif key == "threads":
            val = _coerce(Opt("threads", int, 1, "", lo=1), raw, where,
                          problems)
            if val is not None:
                cfg.threads = val
        elif key in opts:
            val = _coerce(opts[key], raw, where, problems)
            if val is not None:
                cfg.values[key] = val
        else:
            problems.append(f"{where}: unknown key {key!r}"
                            + (f" for subcommand {sub!r}" if sub else ""))
    if problems:
        raise ConfigError(problems)
    return cfg


def _defaults(sub: str) -> dict:
    return {o.name: o.default for o in SCHEMA[sub]}


# --- argparse construction ---

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracspec",
        description="Spectral decimation toolkit: self-similar sets, "
                    "Poincare functions, eigenvalue ledgers, zeta values.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="subcommand", required=True)
    for name, opts in SCHEMA.items():
        sp = subs.add_parser(name, help=_SUMMARY_HELP.get(name, ""))
        sp.add_argument("--config", default=None, metavar="FILE",
                        help="config file; flags given here override it")
        sp.add_argument("--out", default=None, metavar="PATH",
                        help="artifact path (default fracspec_<name>.<ext>)")
        sp.add_argument("--format", default=None, choices=("json", "csv"),
                        help=f"artifact format (default "
                             f"{DEFAULT_FORMAT[name]})")
        sp.add_argument("--threads", type=int, default=None, metavar="N",
                        help="worker threads; results do not depend on it")
        for opt in opts:
            flag = "--" + opt.name
            kwargs: dict = {"help": opt.help, "default": None,
                            "dest": opt.name}
            if opt.typ is not str:
                kwargs["type"] = str    # validated via _coerce for uniformity
            if opt.choices:
                kwargs["choices"] = opt.choices
            sp.add_argument(flag, **kwargs)
    return parser


_SUMMARY_HELP = {
    "dim": "similarity dimension from contraction ratios",
    "vn": "vertex sets of the refined gasket",
    "graph-eigs": "dense graph-Laplacian spectrum with multiplicities",
    "restrict-form": "Schur restriction of the level-1 energy form",
    "walk": "hitting-time statistics of the decimating random walk",
    "phi": "Poincare function growth profile along a ray",
    "spiral": "logarithmic spiral limit of backward orbits",
    "julia": "Julia-set sample and multiplier inequalities",
    "spectrum": "eigenvalue ledger (value, multiplicity, generation, family)",
    "count": "eigenvalue counting curve and its scaled oscillation",
    "renewal": "spectral dimension from the renewal equation",
    "zeta": "spectral zeta value (one family or the assembled operator)",
    "casimir": "Casimir energy on the unit gasket",
    "heat-trace": "heat-trace curve on a log-spaced time grid",
}


def _merge(args: argparse.Namespace) -> RunConfig:
    """Defaults <- config file <- explicit flags, with full validation."""
    sub = args.subcommand
    if args.config is not None:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = parse_config(fh.read(), subcommand=sub)
    else:
        cfg = RunConfig(subcommand=sub, values=_defaults(sub))
    if args.out is not None:
        cfg.out = args.out
    if args.format is not None:
        cfg.fmt = args.format
    if args.threads is not None:
        if args.threads < 1:
            raise ConfigError(["'threads' must be >= 1; got "
                               f"{args.threads}"])
        cfg.threads = args.threads
    problems: list[str] = []
    for opt in SCHEMA[sub]:
        raw = getattr(args, opt.name)
        if raw is None:
            continue
        val = _coerce(opt, raw, "flag", problems)
        if val is not None:
            cfg.values[opt.name] = val
    if problems:
        raise ConfigError(problems)
    return cfg


def _parse_ratio_list(raw: str) -> list[float]:
    if not raw.strip():
        raise ConfigError(["'ratios' is required: comma-separated values "
                           "in (0, 1), e.g. 0.5,0.5,0.5"])
    problems, vals = [], []
    for part in raw.split(","):
        try:
            vals.append(float(part))
        except ValueError:
            problems.append(f"'ratios': bad number {part.strip()!r}")
    if problems:
        raise ConfigError(problems)
    return vals


def _system_for(cfg: RunConfig) -> decimation.SpectralSystem:
    name = cfg.values.get("system", "sg")
    if name == "cheb":
        return decimation.chebyshev_system()
    return decimation.sg_system(cfg.values.get("bc", "dirichlet"))


# --- subcommand handlers ---
# Each returns (payload, summary).  payload is a dict for JSON artifacts or a
# list of row tuples for CSV artifacts.

def _run_dim(cfg: RunConfig):
    ratios = _parse_ratio_list(cfg.get("ratios"))
    d = selfsim.hausdorff_dim(ratios)
    payload = {"dimension": d, "ratios": ratios}
    return payload, f"dim = {d:.10f} from {len(ratios)} ratios"


def _run_vn(cfg: RunConfig):
    system = selfsim.sierpinski_system()
    pts = selfsim.generate_Vn(system, system.fixed_points, cfg.get("level"))
    rows = [(float(x), float(y)) for x, y in pts]
    return rows, (f"V_{cfg.get('level')}: {len(rows)} vertices "
                  f"(expected {(3 ** (cfg.get('level') + 1) + 3) // 2})")


def _run_graph_eigs(cfg: RunConfig):
    g = sggraph.build_graph(cfg.get("level"))
    op = sggraph.graph_laplacian(g, cfg.get("bc"))
    res = sggraph.eigensolve_dense(op)
    rows = [(float(v), int(m)) for v, m in res.clusters]
    total = sum(m for _, m in rows)
    return rows, (f"level {cfg.get('level')} {cfg.get('bc')}: {total} "
                  f"eigenvalues in {len(rows)} clusters, range "
                  f"[{rows[0][0]:.6f}, {rows[-1][0]:.6f}]")


def _run_restrict_form(cfg: RunConfig):
    c = cfg.get("conductance")
    g = sggraph.build_graph(1)
    restricted = sggraph.restrict_form(sggraph.sg_level1_form(c), g.boundary)
    target = sggraph.triangle_form(0.6 * c).Q
    defect = float(np.max(np.abs(restricted.Q - target)))
    payload = {
        "Q": restricted.Q.tolist(),
        "conductance": c,
        "renormalization_factor": 0.6,
        "defect_vs_three_fifths": defect,
    }
    return payload, (f"trace on the corners = 3/5 x triangle form, "
                     f"defect {defect:.3e}")


def _run_walk(cfg: RunConfig):
    wc = walkmod.WalkConfig(level=cfg.get("level"),
                            samples=cfg.get("samples"),
                            seed=cfg.get("seed"))
    stats = walkmod.simulate_hitting_times(wc)
    payload = stats.to_dict()
    payload["seed"] = cfg.get("seed")
    return payload, (f"level {cfg.get('level')}: mean hitting time "
                     f"{stats.mean:.4f} +- {stats.std_err:.4f} "
                     f"({stats.n_samples} walkers)")


def _run_phi(cfg: RunConfig):
    system = _system_for(cfg)
    prof = poincare.growth_profile(system.phi, theta=cfg.get("theta"),
                                   t_range=(cfg.get("t-lo"),
                                            cfg.get("t-hi")),
                                   samples=cfg.get("samples"))
    payload = prof.to_dict()
    return payload, (f"growth exponent log_lambda(deg) ray theta="
                     f"{cfg.get('theta'):.4f}: periodicity defect "
                     f"{prof.periodicity_defect:.3e}")


def _run_spiral(cfg: RunConfig):
    system = _system_for(cfg)
    z0 = complex(cfg.get("z0"))
    rep = poincare.spiral_limit(system.pmap, z0, complex(system.phi(z0)))
    payload = rep.to_dict()
    return payload, (f"L = {rep.L.real:.10f}{rep.L.imag:+.3e}j, "
                     f"converged={rep.converged}, "
                     f"threshold_met={rep.threshold_met}")


def _run_julia(cfg: RunConfig):
    system = _system_for(cfg)
    rep = poincare.julia_sample_and_multipliers(
        system.pmap, depth=cfg.get("depth"), samples=cfg.get("samples"),
        seed=cfg.get("seed"))
    payload = rep.to_dict()
    payload["seed"] = cfg.get("seed")
    return payload, (f"julia sample real={rep.is_real}, "
                     f"max|Im| {rep.max_imag:.3e}, "
                     f"chebyshev_equality={rep.chebyshev_equality}")


def _run_spectrum(cfg: RunConfig):
    system = _system_for(cfg)
    eigs = decimation.enumerate_spectrum(system, cutoff=cfg.get("cutoff"))
    rows = eigs.to_rows()
    return rows, (f"{eigs.total} eigenvalues (with multiplicity) up to "
                  f"{cfg.get('cutoff'):g} in {len(rows)} distinct values")


def _run_count(cfg: RunConfig):
    lo, hi = cfg.get("x-lo"), cfg.get("x-hi")
    if hi <= lo:
        raise ConfigError(["'x-hi' must exceed 'x-lo'"])
    system = decimation.sg_system(cfg.get("bc"))
    xs = np.geomspace(lo, hi, cfg.get("points"))
    curve = decimation.counting_curve(system, xs)
    rows = [(float(x), float(n), float(sn)) for x, n, sn in curve]
    scaled = curve[:, 2]
    return rows, (f"N({hi:g}) = {int(curve[-1, 1])}; scaled count in "
                  f"[{scaled.min():.6f}, {scaled.max():.6f}]")


def _run_renewal(cfg: RunConfig):
    ratios = _parse_ratio_list(cfg.get("ratios"))
    res = decimation.renewal_spectral_dim(ratios)
    payload = {"d_s": res.d_s, "lattice": res.lattice, "span": res.span,
               "note": res.note, "ratios": ratios}
    kind = "lattice" if res.lattice else "non-lattice"
    return payload, f"d_s = {res.d_s:.10f} ({kind})"


def _parse_point(raw: str) -> complex:
    try:
        return complex(raw.replace(" ", ""))
    except ValueError:
        raise ConfigError([f"'s': cannot parse {raw!r} as a real or "
                           "complex number"]) from None


def _fmt_point(s: complex) -> str:
    return f"{s.real:g}" if s.imag == 0 else f"{s.real:g}{s.imag:+g}j"


def _run_zeta(cfg: RunConfig):
    s = _parse_point(cfg.get("s"))
    w = cfg.get("w")
    tol = cfg.get("tol")
    if w is not None:
        if w >= 0:
            raise DomainError("seed w must be negative; w = 0 has no "
                              "eigenvalue family")
        system = _system_for(cfg)
        rho = math.log(system.pmap.degree) / math.log(system.lam)
        if 0 <= s.real <= rho:
            raise DomainError(
                f"Re s = {s.real:g} lies in the closed strip [0, {rho:.6f}] "
                "between the two representations; evaluate with Re s < 0 "
                "(continuation) or Re s > log d / log lambda (series)")
        if s.real < 0:
            job = zeta.PartialZetaJob(system.phi, w, s, tol=tol,
                                      zero_order=system.zero_order(w))
            res = zeta.partial_zeta_continuation(job)
            value, bound = res.value, res.error_bound
        else:
            value, bound = zeta.partial_zeta_series(system, w, s)
        branch = "continuation" if s.real < 0 else "series"
        label = f"zeta_(w={w:g})({_fmt_point(s)})"
        payload = {"s_re": s.real, "s_im": s.imag,
                   "value_re": value.real, "value_im": value.imag,
                   "error_bound": bound, "w": w, "branch": branch}
    else:
        res = zeta.assemble_sg_zeta(cfg.get("bc"), s, tol=tol)
        value, bound = res.value, res.error_bound
        payload = {"s_re": s.real, "s_im": s.imag,
                   "value_re": value.real, "value_im": value.imag,
                   "error_bound": bound, "bc": cfg.get("bc"),
                   "branch": res.branch}
        if res.pole_warning:
            payload["pole_warning"] = res.pole_warning
        label = f"zeta_{cfg.get('bc')}({_fmt_point(s)})"
    return payload, (f"{label} = {value.real:.10g}"
                     f"{value.imag:+.3e}j +- {bound:.2e}")


def _run_casimir(cfg: RunConfig):
    res = zeta.casimir_energy(cfg.get("bc"), tolerance=cfg.get("tol"))
    payload = res.to_dict()
    payload["E_cas"] = res.value
    return payload, (f"E_cas({cfg.get('bc')}) = {res.value:.10f} "
                     f"+- {res.error_bound:.2e}")


def _run_heat_trace(cfg: RunConfig):
    lo, hi = cfg.get("t-lo"), cfg.get("t-hi")
    if hi <= lo:
        raise ConfigError(["'t-hi' must exceed 't-lo'"])
    system = decimation.sg_system(cfg.get("bc"))
    eigs = decimation.enumerate_spectrum(system, cutoff=cfg.get("cutoff"),
                                         node_budget=2_000_000).expand()
    rows = zeta.heat_trace_profile(eigs, lo, hi,
                                   per_period=cfg.get("per-period"))
    rows = [(float(t), float(k), float(sk)) for t, k, sk in rows]
    scaled = [sk for _, _, sk in rows]
    return rows, (f"{len(rows)} times in [{lo:g}, {hi:g}]; "
                  f"t^(d_S/2) K(t) in [{min(scaled):.6f}, "
                  f"{max(scaled):.6f}]")


HANDLERS = {
    "dim": _run_dim,
    "vn": _run_vn,
    "graph-eigs": _run_graph_eigs,
    "restrict-form": _run_restrict_form,
    "walk": _run_walk,
    "phi": _run_phi,
    "spiral": _run_spiral,
    "julia": _run_julia,
    "spectrum": _run_spectrum,
    "count": _run_count,
    "renewal": _run_renewal,
    "zeta": _run_zeta,
    "casimir": _run_casimir,
    "heat-trace": _run_heat_trace,
}


# --- artifact writers ---

def _write_json(path: str, cfg: RunConfig, payload: dict) -> None:
    doc = {"version": __version__, "config": cfg.echo(), "result": payload}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_csv(path: str, header: tuple, rows: list) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v
                             for v in row])


def _rows_to_json(name: str, rows: list) -> dict:
    header = CSV_HEADERS[name]
    return {"columns": list(header),
            "rows": [list(r) for r in rows]}


def run_command(cfg: RunConfig) -> str:
    """Execute one resolved configuration; returns the summary line."""
    payload, summary = HANDLERS[cfg.subcommand](cfg)
    path = cfg.resolved_out()
    fmt = cfg.resolved_format()
    if isinstance(payload, dict):
        if fmt == "csv":
            raise ConfigError([f"subcommand {cfg.subcommand!r} produces a "
                               "JSON document; csv is not available"])
        _write_json(path, cfg, payload)
    else:
        if fmt == "csv":
            _write_csv(path, CSV_HEADERS[cfg.subcommand], payload)
        else:
            _write_json(path, cfg, _rows_to_json(cfg.subcommand, payload))
    return f"{summary} -> {path}"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge(args)
        print(run_command(cfg))
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"fracspec: config: {problem}", file=sys.stderr)
        return 2
    except AccuracyError as exc:
        print(f"fracspec: accuracy: {exc}", file=sys.stderr)
        return 1
    except FracspecError as exc:
        print(f"fracspec: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"fracspec: io: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
