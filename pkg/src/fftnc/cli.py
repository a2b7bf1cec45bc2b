"""Command-line front end: ``fftnc encode|decode|inspect|simulate``.

Exit codes: 0 on success, 2 when the shares do not reach rank k, 3 for bad
input (unreadable files, malformed containers or scenarios, bad arguments).
"""

import argparse
import sys
from pathlib import Path

from . import codec, overlay
from .errors import FftncError, InsufficientRankError
from .graph import FftGraph, NodeCoord

EXIT_OK = 0
EXIT_RANK = 2
EXIT_INPUT = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which is our insufficient-rank code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _coord(text: str) -> NodeCoord:
    try:
        s, p = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected s,p but got {text!r}") from None
    return NodeCoord(s, p)


def _fail(code: int, message: str) -> int:
    print(f"fftnc: {message}", file=sys.stderr)
    return code


def share_name(coord: NodeCoord) -> str:
    return f"share_s{coord.step}_p{coord.position}.fntc"


def cmd_encode(args) -> int:
    try:
        payload = Path(args.file).read_bytes()
    except OSError as exc:
        return _fail(EXIT_INPUT, f"cannot read {args.file}: {exc.strerror}")
    try:
        if args.n is None:
            g = FftGraph.for_sources(args.k)
        elif args.n < 2 or args.n & (args.n - 1):
            return _fail(EXIT_INPUT, f"n={args.n} is not a power of two >= 2")
        else:
            g = FftGraph(args.n.bit_length() - 1, args.k)
        src = codec.split(payload, args.k)
        if args.all_last_step:
            coords = [c for c in g.nodes(g.u) if not g.is_void(c)]
        else:
            coords = args.coord
        # serialise everything before touching the output directory
        blobs = [(share_name(blk.coord), codec.ShareContainer(g.u, g.k, len(payload), blk).to_bytes())
                 for blk in (codec.encode_block(src, g, c) for c in coords)]
    except FftncError as exc:
        return _fail(EXIT_INPUT, str(exc))
    out = Path(args.out)
    written = []
    try:
        out.mkdir(parents=True, exist_ok=True)
        for name, data in blobs:
            path = out / name
            path.write_bytes(data)
            written.append(path)
    except OSError as exc:
        for path in written:
            path.unlink(missing_ok=True)
        return _fail(EXIT_INPUT, f"cannot write to {out}: {exc.strerror}")
    if args.verbose:
        print(f"wrote {len(written)} shares (n={g.n}, k={g.k}) to {out}")
    return EXIT_OK


def cmd_decode(args) -> int:
    shares = []
    try:
        for name in args.files:
            shares.append(codec.ShareContainer.from_bytes(Path(name).read_bytes()))
    except OSError as exc:
        return _fail(EXIT_INPUT, f"cannot read {exc.filename}: {exc.strerror}")
    except FftncError as exc:
        return _fail(EXIT_INPUT, f"{args.files[len(shares)]}: {exc}")
    meta = {(s.u, s.k, s.original_length, len(s.block)) for s in shares}
    if len(meta) != 1:
        return _fail(EXIT_INPUT, "shares disagree on n, k, length or block size")
    first = shares[0]
    try:
        g = first.graph()
        blocks = codec.decode([s.block for s in shares], g)
        data = codec.merge(codec.SourceObject(blocks, first.original_length))
    except InsufficientRankError as exc:
        return _fail(EXIT_RANK, f"cannot decode: rank {exc.rank} of {exc.k}")
    except FftncError as exc:
        return _fail(EXIT_INPUT, str(exc))
    try:
        Path(args.out).write_bytes(data)
    except OSError as exc:
        return _fail(EXIT_INPUT, f"cannot write {args.out}: {exc.strerror}")
    return EXIT_OK


def cmd_inspect(args) -> int:
    n = args.n
    if n < 2 or n & (n - 1):
        return _fail(EXIT_INPUT, f"n={n} is not a power of two >= 2")
    k = n if args.k is None else args.k
    try:
        g = FftGraph(n.bit_length() - 1, k)
    except FftncError as exc:
        return _fail(EXIT_INPUT, str(exc))
    sys.stdout.write(g.dump())
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        text = Path(args.scenario).read_text()
    except OSError as exc:
        return _fail(EXIT_INPUT, f"cannot read {args.scenario}: {exc.strerror}")
    try:
        events = overlay.parse_scenario(text)
        metrics, ov = overlay.run_scenario(events, seed=args.seed, k=args.k)
    except FftncError as exc:
        return _fail(EXIT_INPUT, str(exc))
    csv_text = metrics.to_csv()
    if args.out == "-":
        sys.stdout.write(csv_text)
    else:
        try:
            Path(args.out).write_text(csv_text)
        except OSError as exc:
            return _fail(EXIT_INPUT, f"cannot write {args.out}: {exc.strerror}")
    if args.verbose:
        print(f"{len(events)} events, final n={ov.n} k={ov.k}, "
              f"{metrics.connection_changes} connection changes", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fftnc", description="FFT network coding over GF(65537)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    enc = sub.add_parser("encode", help="cut a file into k blocks and write coded shares")
    enc.add_argument("file")
    enc.add_argument("--k", type=int, required=True)
    enc.add_argument("--n", type=int, help="graph size (default: smallest power of two >= k)")
    which = enc.add_mutually_exclusive_group(required=True)
    which.add_argument("--coord", type=_coord, action="append", metavar="S,P")
    which.add_argument("--all-last-step", action="store_true")
    enc.add_argument("--out", required=True, help="output directory")
    enc.set_defaults(func=cmd_encode)

    dec = sub.add_parser("decode", help="rebuild a file from share containers")
    dec.add_argument("files", nargs="+")
    dec.add_argument("--out", required=True)
    dec.set_defaults(func=cmd_decode)

    ins = sub.add_parser("inspect", help="list the nodes of an FFT graph")
    ins.add_argument("--n", type=int, required=True)
    ins.add_argument("--k", type=int)
    ins.set_defaults(func=cmd_inspect)

    sim = sub.add_parser("simulate", help="replay a churn scenario and write metrics as CSV")
    sim.add_argument("scenario")
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--k", type=int, default=4)
    sim.add_argument("--out", required=True, help="CSV path, or - for stdout")
    sim.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "k", None) is not None and args.k < 1:
        return _fail(EXIT_INPUT, "k must be at least 1")
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
