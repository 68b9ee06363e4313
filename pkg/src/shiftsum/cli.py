"""Command-line front end.

    shiftsum compute   --f mobius --q 7 --chi 3 --a 1 --N 20
    shiftsum verify    --lemma weil --qmax 101
    shiftsum decompose --N 1000 --q 101 --f mobius [--all-r]
    shiftsum scan      --grid-N 10000 100000 --grid-q 101 1009 --f mobius
    shiftsum probe     --N 1000000 --q 1000003 --eps 0.1

Exit status: 0 success, 1 invalid input, 2 assertion failure, 3 resource limit.
The character is chosen by its index ``k``: ``chi(g^j) = e(k j / (q-1))`` with
``g`` the smallest primitive root mod ``q``; the default is the quadratic
character.  Relative output paths resolve against ``$SHIFTSUM_OUTPUT_DIR``
when it is set.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Sequence

from . import bounds, verify
from .characters import character
from .decomposition import admissible_blocks, lemma1_blocks
from .modarith import ModulusError, get_context, is_prime
from .multfunc import SieveLimitError, make_function
from .sums import ShiftError, shifted_product_sum, shifted_sum

log = logging.getLogger("shiftsum")

EXIT_OK, EXIT_INVALID, EXIT_FAILED, EXIT_RESOURCE = 0, 1, 2, 3
CSV_SCHEMA_VERSION = 1
OUTPUT_DIR_ENV = "SHIFTSUM_OUTPUT_DIR"
COMMANDS = ("compute", "verify", "decompose", "scan", "probe")

SCAN_COLUMNS = (
    "N", "q", "f", "t", "shifts", "lhs_abs", "rhs", "ratio", "nontrivial", "in_window", "wall_ms", "error",
)


class InvalidInput(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    f_name: str = "mobius"
    q: int = 101
    char_index: int | None = None
    shifts: list[int] = field(default_factory=lambda: [1])
    N: int = 1000
    grid_N: list[int] = field(default_factory=list)
    grid_q: list[int] = field(default_factory=list)
    grid_f: list[str] = field(default_factory=list)
    eps: float = 0.1
    seed: int = 0
    threads: int = 1
    output: str | None = None
    format: str = "json"
    lemma: str = "all"
    qmax: int | None = None
    all_r: bool = False
    timing: bool = True

    @property
    def k(self) -> int:
        return (self.q - 1) // 2 if self.char_index is None else self.char_index

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise InvalidInput(f"unknown command {self.command!r}")
        if self.format not in ("csv", "json"):
            raise InvalidInput(f"format must be csv or json, got {self.format!r}")
        if self.threads < 1:
            raise InvalidInput("threads must be at least 1")
        if self.command in ("compute", "decompose", "verify", "probe"):
            if self.q < 3 or not is_prime(self.q):
                raise InvalidInput(f"q={self.q} is not an odd prime")
            if not 0 <= self.k <= self.q - 2:
                raise InvalidInput(f"character index must lie in [0, {self.q - 2}]")
        if self.command in ("verify", "decompose") and self.k == 0:
            raise InvalidInput("a non-principal character is required (--chi must be nonzero)")
        if self.command in ("compute", "decompose") and self.N < 1:
            raise InvalidInput("N must be at least 1")
        if self.command == "scan":
            if not self.grid_N or not self.grid_q:
                raise InvalidInput("scan needs --grid-N and --grid-q")
        if self.eps <= 0:
            raise InvalidInput("eps must be positive")


def _function(cfg: RunConfig):
    name = cfg.f_name
    if name == "random":
        name = f"random:{cfg.seed}"
    try:
        return make_function(name)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None


# formatting -------------------------------------------------------------------

def fmt_real(x: float) -> str:
    """17 significant digits, '.' separator."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if math.isnan(x) or math.isinf(x):
        return repr(float(x))
    return format(x, ".17g")


def _csv_text(rows: Sequence[dict], columns: Sequence[str], command: str) -> str:
    buf = io.StringIO()
    buf.write(f"# schema_version: {CSV_SCHEMA_VERSION}\n# command: {command}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        out = []
        for c in columns:
            v = row.get(c, "")
            if isinstance(v, (float, int, bool)) and v != "":
                v = fmt_real(v)
            out.append("" if v is None else v)
        w.writerow(out)
    return buf.getvalue()


def _json_text(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, cfg: RunConfig) -> None:
    if not cfg.output:
        sys.stdout.write(text)
        return
    path = cfg.output
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    log.info("wrote %s", path)


# commands -----------------------------------------------------------------------

def cmd_compute(cfg: RunConfig) -> dict:
    chi = character(cfg.q, cfg.k)
    f = _function(cfg)
    shifts = list(cfg.shifts)
    if len(shifts) == 1:
        s = shifted_sum(f, chi, shifts[0], cfg.N, threads=cfg.threads)
        rhs = bounds.theorem1_rhs(cfg.N, cfg.q)
    else:
        s = shifted_product_sum(f, chi, shifts, cfg.N, threads=cfg.threads)
        rhs = bounds.theorem2_rhs(cfg.N, cfg.q)
    rep = bounds.make_report("theorem1" if len(shifts) == 1 else f"theorem2[t={len(shifts)}]",
                             abs(s.value), rhs, cfg.N, cfg.q, len(shifts))
    return {
        "f": f.name,
        "q": cfg.q,
        "k": cfg.k,
        "shifts": shifts,
        "N": cfg.N,
        "abs": abs(s.value),
        "value": {"re": s.value.real, "im": s.value.imag},
        "exact_value": s.exact_value,
        "rhs": rep.rhs,
        "ratio": rep.ratio,
        "nontrivial": rep.nontrivial,
    }


def cmd_verify(cfg: RunConfig) -> tuple[list[dict], bool]:
    names = list(verify.SUITES) if cfg.lemma == "all" else [cfg.lemma]
    rows: list[dict] = []
    passed = True
    for name in names:
        if name not in verify.SUITES:
            raise InvalidInput(f"unknown lemma {name!r}; choose from {', '.join(verify.SUITES)} or all")
        kw: dict[str, Any] = {}
        if name in ("weil", "jacobsthal", "orthogonality") and cfg.qmax:
            kw["qmax"] = cfg.qmax
        if name in ("lemma4-identity", "lemma5"):
            kw["seed"] = cfg.seed
        if name in ("cauchy", "partition"):
            given = getattr(cfg, "given", set())
            if cfg.grid_N or "N" in given:
                kw["Ns"] = cfg.grid_N or [cfg.N]
            if cfg.grid_q or "q" in given:
                kw["qs"] = cfg.grid_q or [cfg.q]
            if cfg.grid_f or "f_name" in given:
                kw["fs"] = cfg.grid_f or [cfg.f_name]
            kw["k"] = cfg.char_index
        n_fail = 0
        n = 0
        for row in verify.SUITES[name](**kw):
            n += 1
            if not row.ok:
                n_fail += 1
                log.error("FAIL %s %s value=%r bound=%r", row.lemma, row.case, row.value, row.bound)
            rows.append({
                "lemma": row.lemma, "case": row.case, "re": row.value.real if isinstance(row.value, complex) else float(row.value),
                "im": row.value.imag if isinstance(row.value, complex) else 0.0, "abs": abs(row.value),
                "bound": row.bound, "ratio": row.ratio, "ok": row.ok,
            })
        log.warning("%s: %d cases, %d failed", name, n, n_fail)
        passed = passed and n_fail == 0
    return rows, passed


def cmd_decompose(cfg: RunConfig) -> dict:
    chi = character(cfg.q, cfg.k)
    f = _function(cfg)
    a = cfg.shifts[0]
    r_values = admissible_blocks(cfg.N) if cfg.all_r else None
    rep = lemma1_blocks(f, chi, a, cfg.N, r_values=r_values, with_sigma12=True, threads=cfg.threads)
    return rep.to_dict()


def scan_rows(cfg: RunConfig) -> list[dict]:
    rows = []
    fnames = cfg.grid_f or [cfg.f_name]
    for name in fnames:
        for q in cfg.grid_q:
            for N in cfg.grid_N:
                row: dict[str, Any] = {"N": N, "q": q, "f": name, "t": len(cfg.shifts),
                                       "shifts": ";".join(str(a) for a in cfg.shifts)}
                t0 = time.perf_counter()
                try:
                    if not is_prime(q) or q < 3:
                        raise InvalidInput(f"q={q} is not an odd prime")
                    k = (q - 1) // 2 if cfg.char_index is None else cfg.char_index
                    chi = character(get_context(q), k)
                    f = make_function(f"random:{cfg.seed}" if name == "random" else name)
                    if len(cfg.shifts) == 1:
                        rep, _ = bounds.theorem1_report(f, chi, cfg.shifts[0], N, threads=cfg.threads)
                    else:
                        rep, _ = bounds.theorem2_report(f, chi, cfg.shifts, N, threads=cfg.threads)
                    probe = bounds.nontrivial_range_probe(N, q, cfg.eps)
                    row.update(lhs_abs=rep.lhs_abs, rhs=rep.rhs, ratio=rep.ratio, nontrivial=rep.nontrivial,
                               in_window=probe.in_window, error="")
                except (ValueError, ModulusError, MemoryError) as exc:
                    row["error"] = f"{type(exc).__name__}: {exc}"
                wall = (time.perf_counter() - t0) * 1000.0
                row["wall_ms"] = round(wall, 3) if cfg.timing else ""
                rows.append(row)
    return rows


def cmd_scan(cfg: RunConfig) -> str:
    rows = scan_rows(cfg)
    if cfg.format == "json":
        return _json_text({"schema_version": CSV_SCHEMA_VERSION, "columns": list(SCAN_COLUMNS), "rows": rows})
    return _csv_text(rows, SCAN_COLUMNS, "scan")


def cmd_probe(cfg: RunConfig) -> dict:
    return bounds.nontrivial_range_probe(cfg.N, cfg.q, cfg.eps).to_dict()


# argument handling ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    common.add_argument("--f", dest="f_name", help="mobius | liouville | one | random:<seed>")
    common.add_argument("--q", type=int)
    common.add_argument("--chi", dest="char_index", type=int, help="character index k (default: quadratic)")
    common.add_argument("--a", dest="shifts", type=int, nargs="+", help="shift(s); two or more give a product sum")
    common.add_argument("--N", type=int)
    common.add_argument("--grid-N", dest="grid_N", type=int, nargs="+")
    common.add_argument("--grid-q", dest="grid_q", type=int, nargs="+")
    common.add_argument("--grid-f", dest="grid_f", nargs="+")
    common.add_argument("--eps", type=float)
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int)
    common.add_argument("--output", "-o")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="shiftsum", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("compute", parents=[common], help="evaluate one shifted sum")
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--lemma", help=f"one of {', '.join(verify.SUITES)} or all")
    v.add_argument("--qmax", type=int)
    d = sub.add_parser("decompose", parents=[common], help="block decomposition report (JSON)")
    d.add_argument("--all-r", dest="all_r", action="store_true", default=None,
                   help="use every block with e^r <= N instead of the default range")
    s = sub.add_parser("scan", parents=[common], help="grid scan to CSV")
    s.add_argument("--no-timing", dest="timing", action="store_false", default=None,
                   help="leave wall_ms empty so output is byte-reproducible")
    sub.add_parser("probe", parents=[common], help="locate (N, q) against the nontrivial window")
    return p


def config_from_args(argv: Sequence[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    base: dict[str, Any] = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                base = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInput(f"cannot read config: {exc}") from None
    names = {f.name for f in fields(RunConfig)}
    unknown = set(base) - names
    if unknown:
        raise InvalidInput(f"unknown config keys: {sorted(unknown)}")
    base["command"] = args.command
    for name in names:
        val = getattr(args, name, None)
        if val is not None and name != "command":
            base[name] = val
    if args.command == "scan" and "format" not in base:
        base["format"] = "csv"
    cfg = RunConfig(**base)
    cfg.given = set(base)  # type: ignore[attr-defined]
    cfg.verbose = args.verbose  # type: ignore[attr-defined]
    return cfg


def run(cfg: RunConfig) -> int:
    cfg.validate()
    if cfg.command == "compute":
        out = cmd_compute(cfg)
        if cfg.format == "csv":
            cols = ("f", "q", "k", "shifts", "N", "abs", "re", "im", "exact_value", "rhs", "ratio", "nontrivial")
            row = dict(out, shifts=";".join(map(str, out["shifts"])), re=out["value"]["re"], im=out["value"]["im"])
            _emit(_csv_text([row], cols, "compute"), cfg)
        else:
            _emit(_json_text(out), cfg)
        return EXIT_OK
    if cfg.command == "verify":
        rows, passed = cmd_verify(cfg)
        if cfg.format == "csv":
            _emit(_csv_text(rows, ("lemma", "case", "re", "im", "abs", "bound", "ratio", "ok"), "verify"), cfg)
        else:
            _emit(_json_text({"passed": passed, "cases": rows}), cfg)
        return EXIT_OK if passed else EXIT_FAILED
    if cfg.command == "decompose":
        _emit(_json_text(cmd_decompose(cfg)), cfg)
        return EXIT_OK
    if cfg.command == "scan":
        _emit(cmd_scan(cfg), cfg)
        return EXIT_OK
    _emit(_json_text(cmd_probe(cfg)), cfg)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
        logging.basicConfig(
            level=logging.INFO if getattr(cfg, "verbose", False) else logging.WARNING,
            format="%(levelname)s %(message)s",
        )
        return run(cfg)
    except (InvalidInput, ShiftError, ModulusError, TypeError, ValueError) as exc:
        print(f"shiftsum: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (SieveLimitError, MemoryError) as exc:
        print(f"shiftsum: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
