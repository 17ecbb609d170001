"""Command-line entry point: ``scopemeter compute|panel|fetch|cache-clear``.

Exit codes: 0 success, 1 data error, 2 usage error, 3 network error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .errors import DecodeError, FetchError, ScopeMeterError
from .indices import compute_profile_indices
from .ingest import EMPTY_ALIASES, PARSERS, load_alias_map, parse, write_csv
from .model import build_profile, group_by_author
from .panel import build_panel_report, report_to_dict
from .plots import panel_svgs
from .works import DEFAULT_BASE_URL, FetchConfig, clear_cache, contact_from_env, fetch_author_works

EXIT_OK, EXIT_DATA, EXIT_USAGE, EXIT_NETWORK = 0, 1, 2, 3
DEFAULT_CACHE = Path.home() / ".cache" / "scopemeter"

log = logging.getLogger("scopemeter")


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise DataError(f"{path}: {exc.strerror or exc}") from None


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="")
    except OSError as exc:
        raise DataError(f"{path}: cannot write ({exc.strerror or exc})") from None


def _load_records(path: str, fmt: str):
    try:
        return parse(_read(path), fmt)
    except ScopeMeterError as exc:
        raise DataError(f"{path}: {exc}") from None


def _load_aliases(path: str | None):
    if not path:
        return EMPTY_ALIASES
    try:
        return load_alias_map(_read(path))
    except ScopeMeterError as exc:
        raise DataError(f"{path}: {exc}") from None


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def cmd_compute(args) -> int:
    records = _load_records(args.input, args.format)
    aliases = _load_aliases(args.alias)
    by_author = group_by_author(records)
    if not by_author:
        raise DataError(f"{args.input}: no records")
    if args.author is None:
        if len(by_author) > 1:
            raise UsageError(
                f"{args.input} holds {len(by_author)} authors; pick one with --author "
                f"(candidates: {', '.join(sorted(by_author))})"
            )
        author = next(iter(by_author))
    else:
        author = args.author.strip()
        if author not in by_author:
            raise DataError(f"{args.input}: no records for author {author!r}")
    try:
        profile = build_profile(by_author[author], author)
        idx = compute_profile_indices(profile, aliases)
    except ScopeMeterError as exc:
        raise DataError(f"{args.input}: author {author}: {exc}") from None
    out = {
        "author_id": author,
        "n_papers": profile.n_papers,
        "h": idx.h,
        "n_j": idx.n_j,
        "H": round(idx.big_h, 6),
        "M": round(idx.big_m, 6),
    }
    sys.stdout.write(json.dumps(out, ensure_ascii=False) + "\n")
    return EXIT_OK


def _load_groups(path: str) -> dict[str, str]:
    text = _read(path).decode("utf-8-sig", errors="replace")
    reader = csv.reader(io.StringIO(text, newline=""))
    header = [h.strip() for h in next(reader, [])]
    if header[:2] != ["author_id", "group"]:
        raise DataError(f"{path}: line 1: expected header author_id,group")
    groups = {}
    for row in reader:
        if not row or not any(c.strip() for c in row):
            continue
        if len(row) < 2 or not row[0].strip():
            raise DataError(f"{path}: line {reader.line_num}: malformed row")
        groups[row[0].strip()] = row[1].strip()
    return groups


def _scatter_csv(rows, xy) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["author_id", "group", "x", "y"])
    for r in rows:
        x, y = xy(r)
        w.writerow([r.author_id, r.group, x, y])
    return buf.getvalue()


def cmd_panel(args) -> int:
    records = _load_records(args.input, args.format)
    aliases = _load_aliases(args.alias)
    groups = _load_groups(args.groups)
    by_author = group_by_author(records)
    try:
        profiles = [build_profile(recs, author) for author, recs in by_author.items()]
    except ScopeMeterError as exc:
        raise DataError(f"{args.input}: {exc}") from None
    if not set(groups) & set(by_author):
        log.warning("warning: %s matches no author in %s; every row is 'ungrouped'", args.groups, args.input)
    try:
        report = build_panel_report(profiles, groups, aliases, source=f"file:{Path(args.input).name}")
    except ScopeMeterError as exc:
        raise DataError(f"{args.input}: {exc}") from None
    for name, why in report.reasons.items():
        log.warning("warning: correlation %s %s", name, why)

    _write(Path(args.output), _json(report_to_dict(report)))
    if args.scatter:
        _write(Path(f"{args.scatter}_h_nj.csv"), _scatter_csv(report.rows, lambda r: (r.h, r.n_j)))
        _write(Path(f"{args.scatter}_H_M.csv"),
               _scatter_csv(report.rows, lambda r: (f"{r.big_h:.6f}", f"{r.big_m:.6f}")))
    if args.svg:
        svgs = panel_svgs(report)
        _write(Path(f"{args.svg}_h_nj.svg"), svgs["h_nj"])
        _write(Path(f"{args.svg}_H_M.svg"), svgs["H_M"])
    return EXIT_OK


def cmd_fetch(args) -> int:
    try:
        config = FetchConfig(
            author_id=args.author,
            cache_dir=Path(args.cache),
            base_url=args.base_url,
            polite_contact=contact_from_env(args.contact),
            cache_ttl=args.ttl,
            max_rps=args.rps,
            timeout=args.timeout,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = fetch_author_works(config)
    _write(Path(args.output), write_csv(result.records))
    log.warning(result.summary())
    return EXIT_OK


def cmd_cache_clear(args) -> int:
    removed = clear_cache(args.cache, args.older_than)
    sys.stdout.write(f"{removed}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="scopemeter", description="Impact (H) and scope (M) indices from bibliographic records.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--quiet", action="store_true", help="suppress warnings and summaries on stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="indices for one author")
    c.add_argument("--input", required=True)
    c.add_argument("--format", choices=sorted(PARSERS), default="csv")
    c.add_argument("--alias", help="alias CSV (alias,canonical_kind,canonical_key)")
    c.add_argument("--author", help="author id; required when the input holds several")
    c.set_defaults(func=cmd_compute)

    pn = sub.add_parser("panel", help="panel report, scatter CSVs and SVG plots")
    pn.add_argument("--input", required=True)
    pn.add_argument("--format", choices=sorted(PARSERS), default="csv")
    pn.add_argument("--groups", required=True, help="CSV with columns author_id,group")
    pn.add_argument("--output", required=True, help="report JSON path")
    pn.add_argument("--alias")
    pn.add_argument("--scatter", metavar="PREFIX")
    pn.add_argument("--svg", metavar="PREFIX")
    pn.set_defaults(func=cmd_panel)

    f = sub.add_parser("fetch", help="download an author's works into the CSV schema")
    f.add_argument("--author", required=True, help="provider author id")
    f.add_argument("--output", required=True)
    f.add_argument("--base-url", default=DEFAULT_BASE_URL)
    f.add_argument("--cache", default=str(DEFAULT_CACHE))
    f.add_argument("--ttl", type=float, default=86400)
    f.add_argument("--rps", type=float, default=5.0)
    f.add_argument("--timeout", type=float, default=30.0)
    f.add_argument("--contact", help="polite-pool e-mail; defaults to $SCOPEMETER_CONTACT")
    f.set_defaults(func=cmd_fetch)

    cc = sub.add_parser("cache-clear", help="remove cached responses")
    cc.add_argument("--cache", default=str(DEFAULT_CACHE))
    cc.add_argument("--older-than", type=float, default=0, metavar="SECONDS")
    cc.set_defaults(func=cmd_cache_clear)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.WARNING,
                        format="%(message)s", stream=sys.stderr, force=True)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"scopemeter {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"scopemeter {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except DecodeError as exc:
        print(f"scopemeter {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except FetchError as exc:
        print(f"scopemeter {args.command}: {exc}", file=sys.stderr)
        return EXIT_NETWORK
    except ScopeMeterError as exc:
        print(f"scopemeter {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
