"""Command-line driver: ``randconv <subcommand> CONFIG [options]``.

Every subcommand reads one JSON config, writes its report(s) into the
config's ``output_dir`` (or ``--out``) and a PNG figure alongside.

Exit codes: 0 success, 1 a failed verdict (``conditions``: any "fails", or
also "inconclusive-at-depth" with ``--strict``), 2 invalid config or input,
3 computation too large (atom cap, search size).
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .admissibility import SearchTooLargeError, find_spectrum_set, verify_hadamard
from .config import Config, ConfigError, load_config
from .core import CSV_FIELDS, AtomOverflowError, as_fraction, measure_rows
from .criteria import FAILS, INCONCLUSIVE, run_all, support_growth
from .dimension import build_ivp_system, dim_formula, empirical_dimension, ratio_range, solve_dimension
from .families import FiniteFamily, PeriodicFamily
from .randomness import birkhoff_frequencies, recurrence_times
from .reports import make_header, write_csv_report, write_json_report
from .spectra import (TowerError, multiplier_survey, orthogonality_check, parseval_Q,
                      tower_spectrum, uniform_grid, with_spectrum_sets)
from .transform import PairSystem, ft_truncated, tail_delta0_diagnostic, truncate
from . import plotting

log = logging.getLogger("randconv")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_OVERFLOW = 0, 1, 2, 3


class InputError(ValueError):
    """Valid config, but unusable for the requested subcommand."""


def _approx(x):
    """Float when representable, else a decimal-exponent string."""
    if isinstance(x, float):
        return x
    x = Fraction(x)
    try:
        v = float(x)
        if math.isfinite(v) and (v != 0 or x == 0):
            return v
    except OverflowError:
        pass
    e = math.log10(abs(x.numerator)) - math.log10(x.denominator)
    sign = "-" if x < 0 else ""
    return f"{sign}{10 ** (e - math.floor(e)):.6f}e{math.floor(e)}"


def _pair_json(p) -> dict:
    return {"N": p.N, "B": list(p.B), "L": None if getattr(p, "L", None) is None else list(p.L)}


class Runner:
    def __init__(self, cfg: Config, args):
        self.cfg = cfg
        self.args = args
        self.out = Path(args.out) if args.out else cfg.output_dir
        self.files: list[Path] = []

    def header(self):
        return make_header(self.args.command, self.cfg.digest, self.cfg.seed)

    def json(self, name, body):
        self.files.append(write_json_report(self.out / name, self.header(), body))

    def csv(self, name, fields, rows):
        self.files.append(write_csv_report(self.out / name, self.header(), fields, rows))

    def fig(self, fn, name, *a, **kw):
        self.files.append(fn(self.out / name, *a, **kw))

    def grid(self):
        lo, hi = self.cfg.grid_range
        return uniform_grid(self.cfg.grid_points, lo, hi)

    def level(self):
        return self.args.level or self.cfg.caps["level"]

    def finite_pairs(self):
        fam = self.cfg.family
        if not fam.is_finite:
            raise InputError(f"subcommand needs a finite pair list, got family {fam.name!r}")
        return list(self.cfg.pairs)

    # ---- subcommands ----

    def check_admissible(self):
        tol = self.cfg.mask_tol
        rows = []
        for p in self.finite_pairs():
            entry = {"N": p.N, "B": list(p.B), "L_found": None, "max_violation": None,
                     "admissible": False}
            L = getattr(p, "L", None)
            if len(p.B) < 2:
                entry["note"] = "fewer than two digits"
            elif L is not None:
                ok, v = verify_hadamard(p.N, p.B, L, tol)
                entry.update(L_found=list(L), max_violation=v, admissible=ok, source="config")
            else:
                try:
                    L = find_spectrum_set(p.N, p.B, tol)
                except SearchTooLargeError as exc:
                    entry["note"] = str(exc)
                    L = None
                if L is not None:
                    _, v = verify_hadamard(p.N, p.B, L, tol)
                    entry.update(L_found=list(L), max_violation=v, admissible=True, source="search")
            rows.append(entry)
        self.json("check-admissible.json", rows)
        self.fig(plotting.plot_masks, "check-admissible.png", self.cfg.pairs, self.grid())
        return EXIT_OK

    def truncate(self):
        k = self.level()
        mu = truncate(self.cfg.system(), k, self.cfg.caps["atoms"])
        self.csv("truncate.csv", CSV_FIELDS, measure_rows(mu))
        self.fig(plotting.plot_atoms, "truncate.png", mu.float_atoms(), mu.float_weights())
        return EXIT_OK

    def ft_grid(self):
        k, xi = self.level(), self.grid()
        v = np.atleast_1d(ft_truncated(self.cfg.system(), k, xi))
        self.csv("ft-grid.csv", ("xi", "re", "im", "abs"),
                 zip(xi, v.real, v.imag, np.abs(v)))
        self.fig(plotting.plot_curve, "ft-grid.png", xi, {f"k={k}": np.abs(v)},
                 r"$\xi$", r"$|\hat\mu_k(\xi)|$")
        return EXIT_OK

    def _spectral_system(self) -> PairSystem:
        fam = self.cfg.family
        if isinstance(fam, (FiniteFamily, PeriodicFamily)):
            pairs = with_spectrum_sets(self.cfg.pairs, find_spectrum_set)
            fam = type(fam)(pairs)
        return PairSystem(fam, self.cfg.model, self.cfg.exponents)

    def spectrum_verify(self):
        k = self.level()
        try:
            sys_ = self._spectral_system()
            size = math.prod(len(p.B) for p in sys_.pairs(k))
            if size > self.cfg.caps["atoms"]:
                raise AtomOverflowError(f"tower of size {size} exceeds the cap")
            spec = tower_spectrum(sys_, k)
        except TowerError as exc:
            self.json("spectrum-verify.json", {"level": k, "verdict": "fail", "error": str(exc)})
            return EXIT_FAIL
        orth = orthogonality_check(sys_, spec, k, self.cfg.mask_tol)
        res = parseval_Q(sys_, spec, k, self.grid())
        ok = orth.orthogonal and res.complete(self.cfg.parseval_tol)
        body = {
            "level": k,
            "size": len(spec),
            "orthogonality_max_violation": orth.max_violation,
            "structurally_certified": orth.structurally_certified,
            "Q_min": res.q_min,
            "Q_max": res.q_max,
            "verdict": "pass" if ok else "fail",
            "pairs": [_pair_json(p) for p in dict.fromkeys(sys_.pairs(k))],
        }
        if self.args.multipliers:
            body["multiplier_survey"] = multiplier_survey(sys_, spec, k, self.args.multipliers,
                                                          self.grid())
        self.json("spectrum-verify.json", body)
        if self.args.csv:
            self.csv("spectrum-verify.csv", ("xi", "Q"), res.rows())
        self.fig(plotting.plot_curve, "spectrum-verify.png", res.xi, {"Q": res.q},
                 r"$\xi$", r"$Q(\xi)$", hlines=(1.0,))
        return EXIT_OK if ok else EXIT_FAIL

    def conditions(self):
        depth = self.args.depth or self.cfg.caps["conditions"]
        sys_ = self.cfg.system()
        reports = run_all(sys_, depth)
        if self.args.support:
            reports.append(support_growth(sys_, depth))
        body = []
        for r in reports:
            body.append({
                "name": r.name,
                "verdict": r.verdict,
                "depth": r.depth,
                "route": r.route,
                "values": [_approx(v) for v in r.values],
                "witness": {k: (_approx(v) if isinstance(v, Fraction) else v)
                            for k, v in r.witness.items()},
            })
        self.json("conditions.json", body)
        series = {r.name: [float(_approx(v)) if not isinstance(_approx(v), str) else np.nan
                           for v in r.values] for r in reports if r.values}
        fig_series = {n: v for n, v in series.items() if n != "gcd_analysis"}
        longest = max((len(v) for v in fig_series.values()), default=0)
        padded = {n: v + [np.nan] * (longest - len(v)) for n, v in fig_series.items()}
        self.fig(plotting.plot_curve, "conditions.png", np.arange(1, longest + 1), padded,
                 "depth", "partial sum / running sup", marker=".")
        verdicts = {r.verdict for r in reports}
        if FAILS in verdicts or (self.args.strict and INCONCLUSIVE in verdicts):
            return EXIT_FAIL
        return EXIT_OK

    def sample(self):
        n = self.args.n or self.cfg.caps["sample"]
        freqs = birkhoff_frequencies(self.cfg.model, n)
        rows = [(s, str(f), float(f)) for s, f in enumerate(freqs, start=1)]
        self.csv("sample.csv", ("symbol", "frequency", "frequency_float"), rows)
        prob = self.cfg.model.prob
        ref = None
        if prob is not None:
            ref = [float(prob[i]) if i < len(prob) else 0.0 for i in range(len(freqs))]
        self.fig(plotting.plot_bars, "sample.png", range(1, len(freqs) + 1),
                 [float(f) for f in freqs], "symbol", "frequency", ref=ref)
        return EXIT_OK

    def recurrence(self):
        target = self.args.target or self.cfg.target
        if not target:
            raise InputError("recurrence needs a target word (--target or config)")
        horizon = self.args.horizon or self.cfg.caps["horizon"]
        res = recurrence_times(self.cfg.model, target, horizon)
        self.csv("recurrence.csv", ("j", "k_j"), enumerate(res.times, start=1))
        self.json("recurrence.json", {"target": list(target), "horizon": res.horizon,
                                      "depth_found": len(res.times),
                                      "exhausted": res.exhausted})
        js = np.arange(1, len(res.times) + 1)
        self.fig(plotting.plot_curve, "recurrence.png", js,
                 {"k_j": np.asarray(res.times, dtype=float) + 1}, "j", "k_j + 1",
                 logy=True, marker="o")
        return EXIT_OK

    def dimension(self):
        pairs = self.finite_pairs()
        p = self.cfg.dimension_p
        if p is None and self.cfg.model.kind == "iid-bernoulli":
            p = self.cfg.model.prob
        if p is None:
            raise InputError("dimension needs a probability vector (config dimension.p or an iid model)")
        s = dim_formula(pairs, p)
        lo, hi = ratio_range(pairs)
        body = {"s": s, "p": list(p.entries), "exact": isinstance(s, Fraction),
                "ratio_range": [lo, hi]}
        depth = self.args.empirical
        if depth:
            run = empirical_dimension(self.cfg.system(), depth)
            body["empirical_depth"] = depth
            body["empirical_final"] = float(run[-1])
            self.fig(plotting.plot_curve, "dimension.png", np.arange(1, depth + 1),
                     {"running ratio": run}, "k", "ratio", hlines=(float(s),))
        self.json("dimension.json", body)
        return EXIT_OK

    def solve_dimension(self):
        s = self.args.s if self.args.s is not None else self.cfg.dimension_s
        if s is None:
            raise InputError("solve-dimension needs a target (--s or config dimension.s)")
        s = as_fraction(s)
        if self.args.ivp_base:
            pairs = build_ivp_system(s, self.args.ivp_base, self.args.ivp_count).pairs
        else:
            pairs = self.finite_pairs()
        try:
            p = solve_dimension(pairs, s)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        check = dim_formula(pairs, p)
        body = {"s": s, "p": list(p.entries), "exact": isinstance(check, Fraction) and check == s,
                "dim_of_p": check, "pairs": [_pair_json(q) for q in pairs]}
        self.json("solve-dimension.json", body)
        support = [i for i, x in enumerate(p.entries) if x > 0]
        ts = np.linspace(0, 1, 101)
        if len(support) == 2:
            i, j = support
            curve = []
            for t in ts:
                e = [Fraction(0)] * len(pairs)
                e[i], e[j] = Fraction(float(t)), 1 - Fraction(float(t))
                curve.append(float(dim_formula(pairs, e)))
            self.fig(plotting.plot_curve, "solve-dimension.png", ts, {"dim": curve},
                     "weight on the min-ratio pair", "dimension", hlines=(float(s),))
        return EXIT_OK

    def tail_diagnostic(self):
        xi = self.cfg.tail_xi if self.args.xi is None else as_fraction(self.args.xi)
        k_max = self.args.k_max or self.cfg.caps["tail_k"]
        m = self.args.m or self.cfg.caps["tail_m"]
        vals = tail_delta0_diagnostic(self.cfg.system(), xi, k_max, m)
        rows = [(k, v.real, v.imag, abs(v), abs(v - 1)) for k, v in enumerate(vals, start=1)]
        self.csv("tail-diagnostic.csv", ("k", "re", "im", "abs", "dist_to_one"), rows)
        self.fig(plotting.plot_curve, "tail-diagnostic.png", np.arange(1, k_max + 1),
                 {"|nu(xi) - 1|": [r[4] for r in rows]}, "k", "distance to 1", marker="o")
        return EXIT_OK


def _csv_ints(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(",") if t.strip())


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="randconv", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("config", help="JSON experiment config")
        p.add_argument("--out", help="override the config's output_dir")
        return p

    add("check-admissible", "find or verify a spectrum set for every pair")
    for name, help_ in (("truncate", "atoms of the level-k measure (CSV)"),
                        ("ft-grid", "Fourier transform of the level-k measure on the grid")):
        add(name, help_).add_argument("--level", type=int)
    p = add("spectrum-verify", "tower spectrum: orthogonality and Parseval check")
    p.add_argument("--level", type=int)
    p.add_argument("--csv", action="store_true", help="also write Q over the grid")
    p.add_argument("--multipliers", type=_csv_ints, help="descriptive survey of c*Lambda, e.g. 3,5")
    p = add("conditions", "existence, RBC, growth, uniform-bound and gcd checks")
    p.add_argument("--depth", type=int)
    p.add_argument("--strict", action="store_true", help="treat inconclusive as failure")
    p.add_argument("--support", action="store_true", help="also report support growth")
    add("sample", "symbol frequencies along the sequence").add_argument("--n", type=int)
    p = add("recurrence", "times where the shifted sequence approaches a target")
    p.add_argument("--target", type=_csv_ints)
    p.add_argument("--horizon", type=int)
    p = add("dimension", "dimension of the random measure for a probability vector")
    p.add_argument("--empirical", type=int, metavar="DEPTH",
                   help="also compute running ratios along the sampled sequence")
    p = add("solve-dimension", "probability vector reaching a target dimension")
    p.add_argument("--s", help="target, e.g. 3/4")
    p.add_argument("--ivp-base", type=int, help="use the constructed family with this base")
    p.add_argument("--ivp-count", type=int, default=2)
    p = add("tail-diagnostic", "transforms of the tail measures at one frequency")
    p.add_argument("--xi", help="frequency (rational), default from config or 1")
    p.add_argument("--k-max", type=int)
    p.add_argument("--m", type=int, help="factors kept in each tail")
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)  # exact reports can hold very long integers
    try:
        cfg = load_config(args.config)
        runner = Runner(cfg, args)
        code = getattr(runner, args.command.replace("-", "_"))()
    except (ConfigError, InputError, FileNotFoundError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except (AtomOverflowError, SearchTooLargeError) as exc:
        log.error("computation too large: %s", exc)
        return EXIT_OVERFLOW
    except (IndexError, ValueError) as exc:
        # e.g. an explicit prefix shorter than the requested depth
        log.error("invalid input: %s", exc)
        return EXIT_CONFIG
    for f in runner.files:
        log.info("wrote %s", f)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
