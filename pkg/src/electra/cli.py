"""Command-line entry point: ``electra <subcommand> ...``.

Inputs may be files or directories (every ``.soc``/``.soi``/``.toc``/``.toi``
file inside); they are processed in sorted path order so output never
depends on the file system or on ``--jobs``.  Errors end the run with a
nonzero exit code and one JSON record on stderr.
"""

from __future__ import annotations

import argparse
import csv
import functools
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence

from . import cultures, domains, mapel, metrics, preprocess, rules
from .core import Election, ParseError, read_election, save_election

ELECTION_SUFFIXES = (".soc", ".soi", ".toc", ".toi")


class CliError(Exception):
    def __init__(self, message: str, file: str | None = None, line: int | None = None, kind: str = "error"):
        super().__init__(message)
        self.file = file
        self.line = line
        self.kind = kind

    def record(self) -> dict:
        rec: dict[str, Any] = {"error": self.kind, "message": str(self)}
        if self.file is not None:
            rec["file"] = self.file
        if self.line is not None:
            rec["line"] = self.line
        return rec


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message, kind="usage")


# --- input/output helpers ------------------------------------------------------------

def expand_inputs(paths: Sequence[str]) -> list[str]:
    files = set()
    for p in paths:
        path = Path(p)
        if path.is_dir():
            files.update(str(f) for f in path.iterdir() if f.suffix in ELECTION_SUFFIXES and f.is_file())
        elif path.exists():
            files.add(str(path))
        else:
            raise CliError("no such file or directory", file=p, kind="io")
    if not files:
        raise CliError("no election files given", kind="usage")
    return sorted(files)


def load(path: str, break_ties: bool = False) -> Election:
    try:
        return read_election(path, break_ties=break_ties)
    except ParseError as exc:
        raise CliError(str(exc), file=path, line=exc.line, kind=f"parse:{exc.code}") from exc
    except OSError as exc:
        raise CliError(exc.strerror or str(exc), file=path, kind="io") from exc
    except ValueError as exc:
        raise CliError(str(exc), file=path, kind="invalid") from exc


def resolve_jobs(value: int | None) -> int:
    if value is not None:
        return max(1, value)
    env = os.environ.get("ELECTRA_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise CliError(f"ELECTRA_JOBS must be an integer, got {env!r}", kind="usage") from None
    return 1


def pmap(func: Callable, items: Sequence, jobs: int) -> list:
    """Order-preserving map, in worker processes when ``jobs > 1``."""
    if jobs <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ";".join(_cell(x) for x in v)
    return str(v)


def _flatten(rec: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in rec.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        else:
            out[key] = v
    return out


def to_csv(rows: Iterable[dict], header: Sequence[str] | None = None) -> str:
    rows = [_flatten(r) for r in rows]
    if header is None:
        header = []
        for r in rows:
            header += [k for k in r if k not in header]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(r.get(k)) for k in header])
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def emit(args, json_obj, csv_rows: Iterable[dict] | None = None, header: Sequence[str] | None = None) -> None:
    if args.format == "csv":
        if csv_rows is None:
            csv_rows = json_obj if isinstance(json_obj, list) else [json_obj]
        text = to_csv(csv_rows, header)
    else:
        text = to_json(json_obj)
    out = getattr(args, "out", None)
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _uniform_m(elections: Sequence[Election], files: Sequence[str]) -> None:
    ms = {e.m for e in elections}
    if len(ms) > 1:
        raise CliError(f"inputs have mixed numbers of candidates: {sorted(ms)}", kind="invalid")


def _require_complete(e: Election, path: str) -> None:
    if not e.is_complete:
        raise CliError("election is incomplete; run `electra complete` first", file=path, kind="invalid")


# --- per-file workers (top level so worker processes can import them) ------------------

def _file_context(func):
    """Attach the task's file path to library errors raised by a worker."""
    @functools.wraps(func)
    def wrapper(task):
        try:
            return func(task)
        except CliError:
            raise
        except ValueError as exc:
            raise CliError(str(exc), file=task[0], kind=type(exc).__name__) from exc
    return wrapper


def _validate_one(task):
    path, break_ties = task
    try:
        e = load(path, break_ties)
    except CliError as exc:
        return {"file": path, "ok": False, "m": None, "n": None, "kind": None, "message": str(exc), "line": exc.line}
    return {"file": path, "ok": True, "m": e.m, "n": e.n, "kind": e.kind, "message": None, "line": None}


@_file_context
def _stats_one(task):
    path, break_ties, parts, kemeny_score = task
    e = load(path, break_ties)
    _require_complete(e, path)
    summary = metrics.similarity_summary(e, kemeny_score=kemeny_score)
    rec: dict[str, Any] = {"file": path, "m": e.m, "n": e.n}
    rec.update(summary.as_dict())
    if summary.kemeny_score is not None:
        rec["budget"] = metrics.parameter_budget(
            m=e.m, kemeny_score=summary.kemeny_score, avg_kt=summary.avg_kt
        ).as_dict()
    if parts:
        rec["parts"] = {
            name: {"positions": list(p.positions), "pairwise": p.pairwise, "total": p.total}
            for name, p in metrics.part_intersections(e).items()
        }
    return rec


@_file_context
def _timeseries_one(task):
    path, break_ties, baseline, seed = task
    e = load(path, break_ties)
    _require_complete(e, path)
    recs = [{"file": path, "order": "original", **metrics.temporal_profile(e).as_dict()}]
    if baseline:
        recs.append({"file": path, "order": "shuffled", **metrics.temporal_profile(e, True, seed).as_dict()})
    return recs


@_file_context
def _domains_one(task):
    path, break_ties, budget, with_distances = task
    e = load(path, break_ties)
    _require_complete(e, path)
    return domains.election_row(e, path, budget, with_distances, domains.DOMAINS)


# --- subcommands ---------------------------------------------------------------------

def cmd_validate(args) -> int:
    files = expand_inputs(args.inputs)
    recs = pmap(_validate_one, [(f, args.break_ties) for f in files], args.jobs)
    emit(args, recs)
    bad = [r for r in recs if not r["ok"]]
    if bad:
        raise CliError(f"{len(bad)} invalid file(s): {bad[0]['message']}", file=bad[0]["file"], line=bad[0]["line"], kind="invalid")
    return 0


def cmd_complete(args) -> int:
    e = load(args.input, args.break_ties)
    out = preprocess.complete_election(e, effort=args.effort, seed=args.seed)
    Path(args.output).parent.mkdir(parents=True, exist_ok=True)
    save_election(out, args.output)
    emit(args, {"input": args.input, "output": args.output, "m": out.m, "n": out.n, "edges": out.m * out.n},
         header=["input", "output", "m", "n", "edges"])
    return 0


def cmd_normalize(args) -> int:
    files = expand_inputs(args.inputs)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    recs = []
    names = set()
    for i, path in enumerate(files):
        e = load(path, args.break_ties)
        _require_complete(e, path)
        if not preprocess.is_relevant(e, max(args.min_candidates, args.m)):
            recs.append({"file": path, "written": [], "skipped": f"fewer than {max(args.min_candidates, args.m)} candidates"})
            continue
        written = []
        for k in range(args.count):
            name = f"{Path(path).stem}_{k:04d}.soc"
            if name in names:
                raise CliError(f"two inputs would both write {name}", file=path, kind="usage")
            names.add(name)
            sample = preprocess.normalize_sample(
                e, args.m, args.n, seed=cultures.task_seed(args.seed, i * args.count + k)
            )
            save_election(sample, out_dir / name)
            written.append(str(out_dir / name))
        recs.append({"file": path, "written": written, "skipped": None})
    emit(args, recs)
    return 0


def cmd_stats(args) -> int:
    files = expand_inputs(args.inputs)
    recs = pmap(_stats_one, [(f, args.break_ties, args.parts, not args.no_kemeny) for f in files], args.jobs)
    emit(args, recs)
    return 0


def cmd_timeseries(args) -> int:
    files = expand_inputs(args.inputs)
    tasks = [(f, args.break_ties, args.shuffle_baseline, cultures.task_seed(args.seed, i)) for i, f in enumerate(files)]
    recs = [r for group in pmap(_timeseries_one, tasks, args.jobs) for r in group]
    emit(args, recs)
    return 0


def _load_complete(files, break_ties):
    elections = []
    for f in files:
        e = load(f, break_ties)
        _require_complete(e, f)
        elections.append(e)
    _uniform_m(elections, files)
    return elections


def cmd_distances(args) -> int:
    files = expand_inputs(args.inputs)
    elections = _load_complete(files, args.break_ties)
    dm = mapel.distance_matrix(elections, files, include_compass=args.compass)
    rows = [{"id": a, **{b: float(x) for b, x in zip(dm.labels, row)}} for a, row in zip(dm.labels, dm.d)]
    emit(args, {"labels": list(dm.labels), "distances": dm.d.tolist()}, rows, ["id", *dm.labels])
    return 0


def cmd_map(args) -> int:
    files = expand_inputs(args.inputs)
    elections = _load_complete(files, args.break_ties)
    tags = [Path(f).parent.name or "." for f in files]
    dm = mapel.distance_matrix(elections, files, tags, include_compass=args.compass)
    emb = mapel.embed_map(dm, iterations=args.iterations, seed=args.seed)
    rows = [
        {"id": lab, "x": float(p[0]), "y": float(p[1]), "dataset_tag": tag}
        for lab, p, tag in zip(emb.labels, emb.points, dm.tags)
    ]
    emit(args, {"stress": emb.stress, "points": rows}, rows, ["id", "x", "y", "dataset_tag"])
    return 0


def _domain_rows(args) -> list[dict]:
    files = expand_inputs(args.inputs)
    tasks = [(f, args.break_ties, args.max_budget, args.distances) for f in files]
    return pmap(_domains_one, tasks, args.jobs)


def cmd_domains(args) -> int:
    rows = _domain_rows(args)
    if args.format == "csv":
        flat = []
        for r in rows:
            rec = {"file": r["id"], **{f"member.{d}": r["membership"][d] for d in domains.DOMAINS}}
            for mode, ds in r.get("distances", {}).items():
                for d, k in ds.items():
                    rec[f"{mode}.{d}"] = k
            flat.append(rec)
        emit(args, rows, flat)
    else:
        emit(args, rows)
    return 0


def cmd_venn(args) -> int:
    args.distances = True
    rows = _domain_rows(args)
    report = domains.summarize_rows(rows)
    table = [
        {"table": name, "region": region, "count": count}
        for name, regions in report["venn"].items()
        for region, count in regions.items()
    ]
    emit(args, {"venn": report["venn"], "membership_counts": report["membership_counts"],
                "correlation": report["correlation"]}, table, ["table", "region", "count"])
    return 0


def cmd_rules(args) -> int:
    files = expand_inputs(args.inputs)
    elections = _load_complete(files, args.break_ties)
    chosen = args.rules.split(",") if args.rules else list(rules.RULES)
    for r in chosen:
        if r not in rules.RULES:
            raise CliError(f"unknown rule {r!r}", kind="usage")
    report = rules.rules_report(elections, chosen)
    if not args.pairwise:
        report.pop("winner_consensus")
        report.pop("ranking_consensus")
    report["winners"] = [
        {"file": f, **{r: sorted(rules.apply_rule(e, r).winners) for r in chosen}}
        for f, e in zip(files, elections)
    ]
    emit(args, report, _rules_rows(report, chosen), ["table", "subset", "row", "column", "value"])
    return 0


def _rules_rows(report: dict, chosen: Sequence[str]) -> list[dict]:
    rows = []
    for notion, table in report["condorcet"].items():
        for key, val in table.items():
            rows.append({"table": f"condorcet_{notion}", "subset": "all", "row": key, "column": "", "value": val})
    for r, fr in report["ties"].items():
        for subset, val in fr.items():
            rows.append({"table": "ties", "subset": subset, "row": r, "column": "", "value": val})
    blocks = [(f"winner_{m}", v) for m, v in report.get("winner_consensus", {}).items()]
    if "ranking_consensus" in report:
        blocks.append(("ranking_spearman", report["ranking_consensus"]))
    for name, by_subset in blocks:
        for subset, matrix in by_subset.items():
            if matrix is None:
                continue
            for a in chosen:
                for b in chosen:
                    rows.append({"table": name, "subset": subset, "row": a, "column": b, "value": matrix[a][b]})
    return rows


def cmd_sample(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    recs = []
    for k in range(args.count):
        e = cultures.sample_culture(args.culture, args.m, args.n, cultures.task_seed(args.seed, k))
        path = out_dir / f"{args.culture}_{k:04d}.soc"
        save_election(e, path)
        recs.append({"file": str(path), "culture": args.culture, "m": e.m, "n": e.n})
    emit(args, recs)
    return 0


# --- argument parsing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json", help="JSON output (default)")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv", help="CSV output")
    common.set_defaults(format="json")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: $ELECTRA_JOBS or 1)")
    common.add_argument("--break-ties", action="store_true", help="rank tied candidates by increasing index")

    parser = _Parser(prog="electra", description="Analyse collections of ranked-preference elections.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, inputs=True, out=True):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if inputs:
            p.add_argument("inputs", nargs="+", help="election files or directories")
        if out:
            p.add_argument("--out", help="write the report here instead of stdout")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "parse election files and report their shape")

    p = add("complete", cmd_complete, "extract a large complete sub-election", inputs=False, out=False)
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--effort", type=int, default=200, help="random restarts of the biclique search")

    p = add("normalize", cmd_normalize, "draw fixed-size samples from complete elections", out=False)
    p.add_argument("--m", type=int, default=15)
    p.add_argument("--n", type=int, default=30)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--min-candidates", type=int, default=15)
    p.add_argument("--out", dest="out_dir", required=True, help="directory for the numbered samples")

    p = add("stats", cmd_stats, "similarity measures and parameter budgets")
    p.add_argument("--parts", action="store_true", help="include part intersection measures")
    p.add_argument("--no-kemeny", action="store_true", help="skip the Kemeny score")

    p = add("timeseries", cmd_timeseries, "temporal change measures along the vote order")
    p.add_argument("--shuffle-baseline", action="store_true", help="also report a randomly reordered copy")

    p = add("distances", cmd_distances, "positionwise distance matrix")
    p.add_argument("--compass", action="store_true", help="add compass elections and paths")

    p = add("map", cmd_map, "2-D map of elections")
    p.add_argument("--compass", action="store_true", help="add compass elections and paths")
    p.add_argument("--iterations", type=int, default=1000)

    p = add("domains", cmd_domains, "restricted-domain membership and deletion distances")
    p.add_argument("--distances", action="store_true", help="compute deletion distances")
    p.add_argument("--max-budget", type=int, default=None, help="give up on distances above this")

    p = add("venn", cmd_venn, "domain overlap counts at several deletion distances")
    p.add_argument("--max-budget", type=int, default=None, help="give up on distances above this")

    p = add("rules", cmd_rules, "voting rules, Condorcet efficiency, consensus and ties")
    p.add_argument("--pairwise", action="store_true", help="include rule-by-rule consensus matrices")
    p.add_argument("--rules", help="comma-separated subset of " + ",".join(rules.RULES))

    p = add("sample", cmd_sample, "generate synthetic elections", inputs=False, out=False)
    p.add_argument("--culture", choices=cultures.CULTURES, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", dest="out_dir", required=True, help="output directory")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.jobs = resolve_jobs(args.jobs)
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(json.dumps(exc.record()) + "\n")
        return 2 if exc.kind == "usage" else 1
    except (ValueError, ArithmeticError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1
    except OSError as exc:
        sys.stderr.write(json.dumps({"error": "io", "message": str(exc), "file": exc.filename}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
