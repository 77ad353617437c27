"""Experiment drivers: measured statistics with seeds, never verdicts.

All the protocol's security rests on search problems with no known
algorithm; nothing here proves anything.  The drivers produce reproducible
numbers: honest-session acceptance (expected: all of them), cheat-prover
acceptance (expected: about one round in two, vanishing per session), and
brute-force recovery of planted secrets at toy sizes.  Small Laver tables
are flagged in the output: operation collisions there (whole rows can be
constant) make forgery much easier than on word platforms, which is a
property of the platform, not of the scheme.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Any

from . import laver
from .braids import BraidWord
from .platforms import LdPlatform, parse_platform, scsp_search
from .protocol import (
    CheatProver,
    ProtocolConfig,
    Verifier,
    cheat_session,
    keygen,
    run_session,
)

__all__ = [
    "ExperimentReport",
    "experiment_completeness",
    "experiment_soundness_rounds",
    "experiment_soundness_sessions",
    "experiment_bruteforce",
    "threshold_observations",
]


@dataclass(frozen=True)
class ExperimentReport:
    """Counts plus a normal-approximation 95% confidence interval."""

    experiment: str
    trials: int
    successes: int
    rate: float
    ci_low: float
    ci_high: float
    seed: int
    wall_time_s: float
    params: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _report(experiment: str, trials: int, successes: int, seed: int,
            started: float, params: dict[str, Any],
            notes: list[str] | None = None) -> ExperimentReport:
    rate = successes / trials if trials else 0.0
    half = 1.96 * math.sqrt(rate * (1.0 - rate) / trials) if trials else 0.0
    return ExperimentReport(
        experiment=experiment,
        trials=trials,
        successes=successes,
        rate=rate,
        ci_low=max(0.0, rate - half),
        ci_high=min(1.0, rate + half),
        seed=seed,
        wall_time_s=round(time.perf_counter() - started, 3),
        params=params,
        notes=notes or [],
    )


def _platform_notes(platform: LdPlatform) -> list[str]:
    notes = []
    elements = platform.elements()
    if elements is not None and len(elements) <= 256:
        notes.append(
            f"{platform.name} is tiny ({len(elements)} elements); operation "
            f"collisions inflate cheat acceptance, demo only"
        )
    return notes


def experiment_completeness(config: ProtocolConfig, trials: int,
                            seed: int = 0) -> ExperimentReport:
    """Honest sessions; every one of them should be accepted."""
    started = time.perf_counter()
    platform = config.resolve_platform()
    rng = random.Random(seed)
    successes = 0
    for _ in range(trials):
        keypair = keygen(platform, rng)
        transcript = run_session(config, keypair, rng, platform=platform)
        successes += 1 if transcript.accepted else 0
    return _report(
        "completeness", trials, successes, seed, started,
        {"platform": config.platform, "rounds": config.rounds,
         "law_mode": config.law_mode},
    )


def experiment_soundness_rounds(platform_descriptor: str, trials: int,
                                seed: int = 0) -> ExperimentReport:
    """Single cheat rounds against a fixed key; rate should sit near 1/2."""
    started = time.perf_counter()
    platform = parse_platform(platform_descriptor)
    rng = random.Random(seed)
    keypair = keygen(platform, rng)
    successes = 0
    for _ in range(trials):
        cheater = CheatProver(platform, keypair.public_p, keypair.public_p_prime)
        verifier = Verifier(platform, keypair.public_p, keypair.public_p_prime)
        x, x_prime = cheater.commit(rng)
        verifier.receive_commit(x, x_prime)
        c = verifier.challenge(rng)
        successes += 1 if verifier.receive_response(cheater.respond(c)) else 0
    return _report(
        "soundness-rounds", trials, successes, seed, started,
        {"platform": platform_descriptor}, _platform_notes(platform),
    )


def experiment_soundness_sessions(config: ProtocolConfig, trials: int,
                                  seed: int = 0) -> ExperimentReport:
    """Full cheat sessions; acceptance decays like 2^-rounds."""
    started = time.perf_counter()
    platform = config.resolve_platform()
    rng = random.Random(seed)
    keypair = keygen(platform, rng)
    successes = 0
    for _ in range(trials):
        transcript = cheat_session(
            config, keypair.public_p, keypair.public_p_prime, rng,
            platform=platform)
        successes += 1 if transcript.accepted else 0
    return _report(
        "soundness-sessions", trials, successes, seed, started,
        {"platform": config.platform, "rounds": config.rounds,
         "law_mode": config.law_mode}, _platform_notes(platform),
    )


def experiment_bruteforce(platform_descriptor: str, trials: int,
                          secret_len: int = 4, max_index: int = 2,
                          seed: int = 0) -> ExperimentReport:
    """Plant secrets, recover any equivalent one by enumeration.

    Success means the search returned some s with s op p = p', verified
    under the platform's equality; searches are self-validating, so the
    rate reported is exactly the recovery rate.
    """
    started = time.perf_counter()
    platform = parse_platform(platform_descriptor)
    rng = random.Random(seed)
    successes = 0
    tried_total = 0
    for _ in range(trials):
        if platform.elements() is None:
            length = rng.randint(0, secret_len)
            alphabet = [i * s for i in range(1, max_index + 1) for s in (1, -1)]
            secret = BraidWord.from_ints(
                rng.choice(alphabet) for _ in range(length))
        else:
            secret = platform.sample(rng)
        p = platform.sample(rng)
        p_prime = platform.op(secret, p)
        result = scsp_search(platform, p, p_prime,
                             max_len=secret_len, max_index=max_index)
        tried_total += result.candidates_tried
        if result.found is not None and platform.eq(
                platform.op(result.found, p), p_prime):
            successes += 1
    return _report(
        "bruteforce-secret-recovery", trials, successes, seed, started,
        {"platform": platform_descriptor, "secret_len": secret_len,
         "max_index": max_index, "candidates_tried": tried_total},
    )


def threshold_observations(n: int) -> dict[str, Any]:
    """Observed threshold sequence of the order-n table, no assertions.

    The first half of the sequence is the interesting part; the second
    half is reported verbatim so its structure can be eyeballed rather
    than assumed.
    """
    ths = [t.t for t in laver.thresholds(n)]
    half = len(ths) // 2
    return {
        "n": n,
        "thresholds": ths,
        "first_half": ths[:half],
        "second_half": ths[half:],
        "max": max(ths),
        "periods": [laver.row_pattern(laver.build_table(n), p).period
                    for p in range(1 << n)],
    }
