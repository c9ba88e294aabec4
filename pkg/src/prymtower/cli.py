"""Command-line front end: single-datum verification, seeded sweeps,
closed-form tables, and an engine selftest.

Exit codes: 0 all comparisons pass, 1 at least one verification
mismatch, 2 invalid input, 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields

from . import formulas, report
from .dihedral import MonodromyDatum, sample_datum, validate_datum, VALID
from .errors import (
    InternalInvariantError,
    InvalidDatumError,
    PrymTowerError,
    SamplingBudgetError,
)
from .prym import CLAIM_IDS, applicable_claims, claim_assumptions, run_claims

EXIT_PASS = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2
EXIT_INTERNAL = 3

MODES = ("verify", "sweep", "table", "selftest")


@dataclass
class RunConfig:
    mode: str
    n: int | None = None
    genus: int | None = None
    exponents: list[int] | None = None
    samples: int = 1
    seed: int | None = None
    claims: list[str] | None = None
    format: str = "json"
    out: str | None = None
    max_n: int = 16
    max_genus: int = 3

    def echo(self) -> dict:
        return {
            "mode": self.mode,
            "n": self.n,
            "genus": self.genus,
            "exponents": self.exponents,
            "samples": self.samples,
            "seed": self.seed,
            "claims": self.claims,
            "format": self.format,
            "out": self.out,
            "max_n": self.max_n,
            "max_genus": self.max_genus,
        }


def _canonical_claims(raw: list[str]) -> list[str]:
    by_lower = {c.lower(): c for c in CLAIM_IDS}
    out = []
    for token in raw:
        token = token.strip()
        if not token:
            continue
        if token.lower() not in by_lower:
            raise ValueError(f"unknown claim id {token!r}")
        out.append(by_lower[token.lower()])
    if not out:
        raise ValueError("empty claim filter")
    return out


def parse_config(argv: list[str]) -> RunConfig:
    parser = argparse.ArgumentParser(
        prog="prymtower",
        description="Exact verification of isogeny degrees in the dihedral "
        "tower of covers of a hyperelliptic curve.",
    )
    parser.add_argument("mode", nargs="?", choices=MODES, help="subcommand")
    parser.add_argument("--config", help="JSON config file; flags override it")
    parser.add_argument("--n", type=int, help="degree of the cyclic cover")
    parser.add_argument("--genus", type=int, help="genus of the hyperelliptic base")
    parser.add_argument("--exponents", help="comma-separated reflection exponents")
    parser.add_argument("--samples", type=int, help="number of sweep samples")
    parser.add_argument("--seed", type=int, help="sampling seed")
    parser.add_argument("--claims", help="comma-separated claim ids")
    parser.add_argument("--format", choices=("json", "csv", "markdown"), help="report format")
    parser.add_argument("--out", help="output path (stdout if omitted)")
    parser.add_argument("--max-n", type=int, dest="max_n", help="table bound on n")
    parser.add_argument("--max-genus", type=int, dest="max_genus", help="table bound on genus")
    args = parser.parse_args(argv)

    merged: dict = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            file_config = json.load(fh)
        if not isinstance(file_config, dict):
            raise ValueError("config file must hold a JSON object")
        known = {f.name for f in fields(RunConfig)}
        for key, value in file_config.items():
            if key not in known:
                raise ValueError(f"unknown config key {key!r}")
            merged[key] = value
    if args.mode is not None:
        merged["mode"] = args.mode
    for key in ("n", "genus", "samples", "seed", "format", "out", "max_n", "max_genus"):
        value = getattr(args, key)
        if value is not None:
            merged[key] = value
    if args.exponents is not None:
        merged["exponents"] = [int(tok) for tok in args.exponents.split(",") if tok.strip()]
    if args.claims is not None:
        merged["claims"] = args.claims.split(",")
    if "mode" not in merged:
        parser.error("mode required (argument or config file)")
    if merged["mode"] not in MODES:
        raise ValueError(f"unknown mode {merged['mode']!r}")
    if merged.get("claims") is not None:
        merged["claims"] = _canonical_claims([str(c) for c in merged["claims"]])
    config = RunConfig(**merged)
    if config.format not in ("json", "csv", "markdown"):
        raise ValueError(f"unknown report format {config.format!r}")
    return config


def _require_n_genus(config: RunConfig) -> None:
    if config.n is None or config.genus is None:
        raise ValueError(f"{config.mode} mode requires --n and --genus")


def _emit(config: RunConfig, rendered: str, summary: dict | None) -> None:
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(rendered)
        if summary is not None:
            print(
                f"wrote {config.out}: pass={summary['pass']} "
                f"fail={summary['fail']} skip={summary['skip']}"
            )
        else:
            print(f"wrote {config.out}")
    else:
        sys.stdout.write(rendered)


def _run_datum(datum: MonodromyDatum, claims: list[str] | None) -> tuple[list[dict], list[str]]:
    records, skipped = run_claims(datum, claims)
    dicts = [report.record_dict(r) for r in records]
    for claim in skipped:
        dicts.append(report.skip_record_dict(claim, datum, "claim not applicable in this regime"))
    assumptions: list[str] = []
    ran = claims if claims is not None else applicable_claims(datum)
    for claim in ran:
        if claim not in skipped:
            assumptions.extend(claim_assumptions(claim))
    return dicts, assumptions


def derived_seed(master: int, index: int) -> int:
    # deterministic per-sample seeds so parallel and serial sweeps agree
    return (master * 1_000_003 + index * 7_919 + 1) % (1 << 62)


def run_verify(config: RunConfig) -> tuple[dict, int]:
    _require_n_genus(config)
    if config.exponents is None and config.seed is None:
        raise ValueError("verify mode requires explicit exponents or a seed")
    if config.exponents is not None:
        datum = MonodromyDatum(config.n, config.genus, tuple(config.exponents))
        verdict = validate_datum(datum)
        if verdict != VALID:
            raise InvalidDatumError(f"violation({verdict})")
    else:
        datum = sample_datum(config.n, config.genus, config.seed)
    records, assumptions = _run_datum(datum, config.claims)
    rep = report.build_report(config.echo(), records, assumptions)
    code = EXIT_MISMATCH if rep["summary"]["fail"] else EXIT_PASS
    return rep, code


def run_sweep(config: RunConfig) -> tuple[dict, int]:
    _require_n_genus(config)
    if config.samples < 1:
        raise ValueError("sweep requires samples >= 1")
    master = config.seed if config.seed is not None else 0
    records: list[dict] = []
    assumptions: list[str] = []
    for index in range(config.samples):
        datum = sample_datum(config.n, config.genus, derived_seed(master, index))
        recs, assume = _run_datum(datum, config.claims)
        records.extend(recs)
        assumptions.extend(assume)
    rep = report.build_report(config.echo(), records, assumptions)
    code = EXIT_MISMATCH if rep["summary"]["fail"] else EXIT_PASS
    return rep, code


def _table_regime(n: int) -> str:
    r = formulas.two_adic_split(n).r
    if r == 0:
        return "odd"
    if r == 1:
        return "2 mod 4"
    return "r>=2"


def table_rows(config: RunConfig) -> list[dict]:
    rows = []
    for n in range(2, config.max_n + 1):
        row = {"n": n, "regime": _table_regime(n)}
        for g in range(2, config.max_genus + 1):
            row[f"g={g}"] = str(formulas.addition_map_degree(n, g))
        rows.append(row)
    return rows


def render_table(config: RunConfig) -> str:
    rows = table_rows(config)
    genera = [f"g={g}" for g in range(2, config.max_genus + 1)]
    if config.format == "csv":
        lines = [",".join(["n", "regime"] + genera)]
        for row in rows:
            lines.append(",".join([str(row["n"]), row["regime"]] + [row[g] for g in genera]))
        return "\n".join(lines) + "\n"
    if config.format == "json":
        return json.dumps({"table": rows}, indent=2, sort_keys=True) + "\n"
    header = "| n | regime | " + " | ".join(genera) + " |"
    divider = "| --- | --- | " + " | ".join("---" for _ in genera) + " |"
    lines = [header, divider]
    for row in rows:
        lines.append(
            "| {} | {} | {} |".format(row["n"], row["regime"], " | ".join(row[g] for g in genera))
        )
    return "\n".join(lines) + "\n"


# (datum spec, claim id, expected formula, expected oracle, expected verdict):
# published values reproduce exactly; the starred entries are the documented
# formula-vs-oracle findings the engine is expected to surface.
_SELFTEST_BATTERY: list[tuple[tuple[int, int, tuple[int, ...]], str, str, str, str]] = [
    ((4, 2, (0, 0, 0, 0, 1, 1)), "THM41", "1", "1", "pass"),
    ((4, 2, (0, 0, 0, 0, 1, 1)), "LEM26", "16", "16", "pass"),
    ((4, 2, (0, 0, 0, 0, 1, 1)), "PROP27", "1", "1", "pass"),
    ((4, 2, (0, 0, 0, 0, 1, 1)), "PROP32", "1", "1", "pass"),
    ((4, 2, (1, 1, 1, 1, 0, 0)), "PROP27", "4", "4", "pass"),
    ((8, 2, (0, 0, 0, 0, 1, 1)), "PROP42", "16384", "16384", "pass"),
    ((8, 2, (0, 0, 0, 0, 1, 1)), "PROP32", "1", "1", "pass"),
    ((8, 2, (0, 0, 0, 0, 1, 1)), "LEM26", "64", "64", "pass"),
    ((8, 2, (0, 0, 0, 0, 1, 1)), "COR43", "16384", "4096", "fail"),
    ((8, 2, (0, 0, 0, 0, 1, 1)), "COR44", "256", "64", "fail"),
    ((8, 2, (0, 0, 0, 0, 1, 1)), "THM41", "4", "1", "fail"),
    ((8, 2, (0, 0, 1, 1, 3, 3)), "PROP32", "4", "4", "pass"),
    ((6, 2, (0, 0, 0, 0, 1, 1)), "THM21b", "1", "1", "pass"),
    ((3, 2, (0, 0, 0, 0, 1, 1)), "THM21a", "1", "1", "pass"),
    ((2, 2, (0, 0, 0, 0, 1, 1)), "THM21b", "1", "1", "pass"),
]


def run_selftest(config: RunConfig) -> tuple[dict, int]:
    """Re-derive a curated battery of known values and compare records
    against the engine's expected outcomes (including the documented
    findings); also checks report determinism."""
    records: list[dict] = []
    assumptions: list[str] = []
    healthy = True
    cache: dict[tuple, tuple[list[dict], list[str]]] = {}
    for datum_spec, claim, formula, oracle, verdict in _SELFTEST_BATTERY:
        n, genus, exponents = datum_spec
        key = datum_spec
        if key not in cache:
            datum = MonodromyDatum(n, genus, exponents)
            cache[key] = _run_datum(datum, None)
        recs, assume = cache[key]
        assumptions.extend(assume)
        matching = [r for r in recs if r["claim"] == claim]
        found = [r for r in matching if r["formula"] == formula and r["oracle"] == oracle and r["verdict"] == verdict]
        ok = bool(found)
        healthy = healthy and ok
        status = "pass" if ok else "fail"
        records.append(
            {
                "claim": claim,
                "anchor": "selftest expectation",
                "datum": {"n": n, "genus": genus, "exponents": list(exponents), "s0": 0, "s1": 0},
                "formula": formula,
                "oracle": oracle if ok else (matching[0]["oracle"] if matching else None),
                "verdict": status,
            }
        )
        print(f"selftest {claim} on n={n} genus={genus}: {status}")
    # determinism: the same datum yields byte-identical record dicts
    d = MonodromyDatum(4, 2, (0, 0, 0, 0, 1, 1))
    first, _ = _run_datum(d, None)
    second, _ = _run_datum(d, None)
    deterministic = json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)
    healthy = healthy and deterministic
    print(f"selftest determinism: {'pass' if deterministic else 'fail'}")
    rep = report.build_report(config.echo(), records, assumptions)
    return rep, EXIT_PASS if healthy else EXIT_INTERNAL


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        config = parse_config(argv)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    try:
        if config.mode == "table":
            _emit(config, render_table(config), None)
            return EXIT_PASS
        if config.mode == "verify":
            rep, code = run_verify(config)
        elif config.mode == "sweep":
            rep, code = run_sweep(config)
        else:
            rep, code = run_selftest(config)
        _emit(config, report.render(rep, config.format), rep["summary"])
        return code
    except (InvalidDatumError, SamplingBudgetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InternalInvariantError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except PrymTowerError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
