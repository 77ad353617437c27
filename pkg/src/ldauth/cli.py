"""Command-line interface.

Subcommands: keygen, auth-demo, serve, prove, laver, law-check, search,
experiment.  Every randomized command takes --seed.  Exit status: 0 for
accept/success, 1 for reject/not-found/law-failure, 2 for transport or
usage errors.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import experiments, laver, net, wire
from .braids import format_word, parse_word
from .platforms import (
    cd_law_check,
    f_preimage_search,
    ld_law_check,
    parse_platform,
    scsp_search,
    search_cd_magmas,
)
from .protocol import ProtocolConfig, keygen, run_session


def _add_platform(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--platform", required=True,
        help="shifted-braid | conj-braid | laver:<n> | int-succ | magma:<file>")


def _add_session_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rounds", type=int, default=20)
    parser.add_argument("--law-mode", choices=("LD", "CD"), default="LD")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--transcript", help="write the session line log here")
    parser.add_argument("--timeout", type=float, default=net.DEFAULT_TIMEOUT)


def _cmd_keygen(args: argparse.Namespace) -> int:
    platform = parse_platform(args.platform)
    keypair = keygen(platform, random.Random(args.seed))
    wire.save_key_file(args.public_out, platform, keypair, include_secret=False)
    wire.save_key_file(args.secret_out, platform, keypair, include_secret=True)
    print(f"wrote {args.public_out} (public) and {args.secret_out} (secret)")
    return 0


def _cmd_auth_demo(args: argparse.Namespace) -> int:
    config = ProtocolConfig(platform=args.platform, rounds=args.rounds,
                            law_mode=args.law_mode, seed=args.seed)
    platform = config.resolve_platform()
    rng = random.Random(args.seed)
    keypair = keygen(platform, rng)
    transcript = run_session(config, keypair, rng, platform=platform)
    lines = wire.transcript_lines(transcript, platform, rounds=config.rounds)
    if args.transcript:
        wire.write_transcript(args.transcript, lines)
    for line in lines:
        sys.stdout.write(line)
    print(f"verdict: {'accept' if transcript.accepted else 'reject'}")
    return 0 if transcript.accepted else 1


def _cmd_serve(args: argparse.Namespace) -> int:
    platform, keypair = wire.load_key_file(args.public)
    config = ProtocolConfig(platform=keypair.platform, rounds=args.rounds,
                            law_mode=args.law_mode, seed=args.seed)
    outcome = net.serve(
        net.parse_address(args.listen), config, keypair, random.Random(args.seed),
        transcript_path=args.transcript, timeout=args.timeout, platform=platform)
    if outcome.reason:
        print(f"reject: {outcome.reason}", file=sys.stderr)
    print(f"verdict: {'accept' if outcome.accepted else 'reject'}")
    return 0 if outcome.accepted else 1


def _cmd_prove(args: argparse.Namespace) -> int:
    platform, keypair = wire.load_key_file(args.secret)
    if keypair.secret is None:
        print("error: the prover needs the secret key file", file=sys.stderr)
        return 2
    config = ProtocolConfig(platform=keypair.platform, rounds=args.rounds,
                            law_mode=args.law_mode, seed=args.seed)
    outcome = net.prove(
        net.parse_address(args.connect), config, keypair, random.Random(args.seed),
        transcript_path=args.transcript, timeout=args.timeout, platform=platform)
    if outcome.reason:
        print(f"reject: {outcome.reason}", file=sys.stderr)
    print(f"verdict: {'accept' if outcome.accepted else 'reject'}")
    return 0 if outcome.accepted else 1


def _cmd_laver(args: argparse.Namespace) -> int:
    if args.what == "print":
        table = laver.build_table(args.n)
        for row in table.entries:
            print(",".join(str(int(v)) for v in row))
    elif args.what == "thresholds":
        for thr in laver.thresholds(args.n):
            print(f"{thr.p},{thr.t}")
    else:
        table = laver.build_table(args.n)
        for p in range(table.size):
            pattern = laver.row_pattern(table, p)
            cells = [str(p), str(pattern.period)] + [str(v) for v in pattern.pattern]
            print(",".join(cells))
    return 0


def _cmd_law_check(args: argparse.Namespace) -> int:
    platform = parse_platform(args.platform)
    check = ld_law_check if args.law == "LD" else cd_law_check
    report = check(platform, trials=args.trials,
                   rng=random.Random(args.seed), exhaustive=args.exhaustive)
    print(f"platform={report.platform} law={report.law} "
          f"checked={report.checked} "
          f"exhaustive={str(report.exhaustive).lower()} "
          f"passed={str(report.passed).lower()}")
    if report.counterexample is not None:
        r, s, p = report.counterexample
        print(f"counterexample: r={r} s={s} p={p}")
    return 0 if report.passed else 1


def _cmd_search(args: argparse.Namespace) -> int:
    if args.target == "cd-magmas":
        magmas = search_cd_magmas(args.size)
        print(f"count={len(magmas)}")
        for m in magmas:
            print(";".join(",".join(str(v) for v in row) for row in m.table))
        return 0
    if args.target == "scsp":
        platform = parse_platform(args.platform)
        result = scsp_search(platform, platform.decode(args.p),
                             platform.decode(args.p_prime),
                             max_len=args.max_len, max_index=args.max_index)
        found = platform.encode(result.found) if result.found is not None else "none"
    else:  # preimage
        result = f_preimage_search(parse_word(args.target_word),
                                   max_len=args.max_len, max_index=args.max_index)
        found = format_word(result.found) if result.found is not None else "none"
    print(f"found={found} tried={result.candidates_tried}")
    return 0 if result.found is not None else 1


def _cmd_experiment(args: argparse.Namespace) -> int:
    if args.kind == "completeness":
        config = ProtocolConfig(platform=args.platform, rounds=args.rounds,
                                law_mode=args.law_mode)
        report = experiments.experiment_completeness(config, args.trials, args.seed)
    elif args.kind == "soundness-rounds":
        report = experiments.experiment_soundness_rounds(
            args.platform, args.trials, args.seed)
    elif args.kind == "soundness-sessions":
        config = ProtocolConfig(platform=args.platform, rounds=args.rounds,
                                law_mode=args.law_mode)
        report = experiments.experiment_soundness_sessions(
            config, args.trials, args.seed)
    else:  # bruteforce
        report = experiments.experiment_bruteforce(
            args.platform, args.trials, secret_len=args.secret_len,
            max_index=args.max_index, seed=args.seed)
    print(report.to_json())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ldauth",
        description="challenge-response authentication over self-distributive operations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="sample a key pair, write key files")
    _add_platform(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--public-out", required=True)
    p.add_argument("--secret-out", required=True)
    p.set_defaults(func=_cmd_keygen)

    p = sub.add_parser("auth-demo", help="run one honest session in-process")
    _add_platform(p)
    _add_session_flags(p)
    p.set_defaults(func=_cmd_auth_demo)

    p = sub.add_parser("serve", help="verify one session over TCP")
    p.add_argument("--listen", required=True, help="host:port")
    p.add_argument("--public", required=True, help="public key file")
    _add_session_flags(p)
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("prove", help="prove one session over TCP")
    p.add_argument("--connect", required=True, help="host:port")
    p.add_argument("--secret", required=True, help="secret key file")
    _add_session_flags(p)
    p.set_defaults(func=_cmd_prove)

    p = sub.add_parser("laver", help="export tables, thresholds, row patterns")
    p.add_argument("what", choices=("print", "thresholds", "patterns"))
    p.add_argument("n", type=int)
    p.set_defaults(func=_cmd_laver)

    p = sub.add_parser("law-check", help="probe the LD or CD law on a platform")
    _add_platform(p)
    p.add_argument("--law", choices=("LD", "CD"), default="LD")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_law_check)

    p = sub.add_parser("search", help="brute-force search baselines")
    search_sub = p.add_subparsers(dest="target", required=True)

    q = search_sub.add_parser("scsp", help="find s with s op p = p'")
    _add_platform(q)
    q.add_argument("--p", required=True, help="encoded element")
    q.add_argument("--p-prime", required=True, help="encoded element")
    q.add_argument("--max-len", type=int, default=6)
    q.add_argument("--max-index", type=int, default=2)
    q.set_defaults(func=_cmd_search)

    q = search_sub.add_parser("preimage", help="find s with s op 1 = target")
    q.add_argument("target_word", help="encoded braid word, e.g. '[1]'")
    q.add_argument("--max-len", type=int, default=6)
    q.add_argument("--max-index", type=int, default=2)
    q.set_defaults(func=_cmd_search)

    q = search_sub.add_parser("cd-magmas", help="enumerate CD tables, size <= 3")
    q.add_argument("--size", type=int, required=True)
    q.set_defaults(func=_cmd_search)

    p = sub.add_parser("experiment", help="reproducible measurement runs")
    p.add_argument("kind", choices=("completeness", "soundness-rounds",
                                    "soundness-sessions", "bruteforce"))
    _add_platform(p)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--rounds", type=int, default=20)
    p.add_argument("--law-mode", choices=("LD", "CD"), default="LD")
    p.add_argument("--secret-len", type=int, default=4)
    p.add_argument("--max-index", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except net.SessionError as exc:
        print(f"session error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, wire.MessageError, laver.TableCapError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
