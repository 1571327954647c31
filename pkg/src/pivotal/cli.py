"""Command-line front end.

Subcommands::

    pivotal power GAME --method {shapley,rollcall} [--dist FILE] [--engine ...]
    pivotal check-exchangeable DIST
    pivotal witness DIST [--format ...]
    pivotal verify-lemma --m M

Games and distributions are JSON files; rational values are integers or
"a/b" strings (decimal floats are rejected to keep inputs exact).  Exit
codes: 0 success/affirmative, 1 negative finding, 2 parse error, 3
guard or precondition violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from ._rational import as_fraction, decimal_approx
from .characterization import (
    alternating_binomial_sum,
    reciprocal_sum_identity,
    reciprocal_sum_identity_at,
    reciprocal_sum_identity_shifted,
    verify_overlap_inverse,
    witness_non_exchangeability,
)
from .distributions import (
    CoalitionDistribution,
    exchangeability_violation,
    explicit_distribution,
    from_size_profile,
    independent_distribution,
    point_mass,
    uniform_distribution,
)
from .errors import GuardLimitError, SpecParseError
from .games import Coalition, CoalitionalGame, PowerVector, unanimity_game, weighted_game
from .rollcall import (
    bernoulli_sampler,
    rollcall_value_exact,
    rollcall_value_monte_carlo,
    rollcall_value_reference,
    sampler_from_distribution,
)
from .shapley import shapley_by_coalitions, shapley_by_permutations

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_GUARD = 3


# ---------------------------------------------------------------------------
# file formats


def _parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, float):
        raise SpecParseError(
            f"{where}: decimal floats are rejected in exact inputs; "
            "use an integer or an 'a/b' string"
        )
    try:
        return as_fraction(value, where=where)
    except ValueError as exc:
        raise SpecParseError(str(exc)) from None


def _parse_rational_list(values: Any, where: str) -> list[Fraction]:
    if not isinstance(values, list):
        raise SpecParseError(f"{where}: expected a list")
    return [_parse_rational(v, f"{where}[{k}]") for k, v in enumerate(values)]


def _parse_int(value: Any, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise SpecParseError(f"{where}: expected an integer, got {value!r}")
    return value


def _parse_players(value: Any, n: int, where: str) -> Coalition:
    if not isinstance(value, list):
        raise SpecParseError(f"{where}: expected a list of player ids")
    try:
        return Coalition.from_players(
            n, [_parse_int(p, f"{where}[{k}]") for k, p in enumerate(value)]
        )
    except ValueError as exc:
        raise SpecParseError(f"{where}: {exc}") from None


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise SpecParseError(f"{path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SpecParseError(f"{path}: expected a JSON object")
    return doc


def parse_game_spec(doc: dict, where: str = "game") -> CoalitionalGame:
    """Build a game from a GameSpec dictionary (kinds: weighted, unanimity,
    explicit)."""
    kind = doc.get("kind")
    try:
        if kind == "weighted":
            quota = _parse_rational(doc.get("quota"), f"{where}.quota")
            weights = _parse_rational_list(doc.get("weights"), f"{where}.weights")
            return weighted_game(quota, weights)
        if kind == "unanimity":
            n = _parse_int(doc.get("n"), f"{where}.n")
            carrier = _parse_players(doc.get("carrier"), n, f"{where}.carrier")
            return unanimity_game(n, carrier)
        if kind == "explicit":
            n = _parse_int(doc.get("n"), f"{where}.n")
            values = _parse_rational_list(doc.get("values"), f"{where}.values")
            if len(values) != 1 << n:
                raise SpecParseError(
                    f"{where}.values: expected {1 << n} entries, got {len(values)}"
                )
            return CoalitionalGame(n, tuple(values))
    except SpecParseError:
        raise
    except GuardLimitError:
        raise
    except ValueError as exc:
        raise SpecParseError(f"{where}: {exc}") from None
    raise SpecParseError(f"{where}.kind: expected weighted|unanimity|explicit, got {kind!r}")


def parse_dist_spec(doc: dict, where: str = "dist") -> CoalitionDistribution:
    """Build a distribution from a DistSpec dictionary (kinds: uniform,
    point, independent, size, explicit)."""
    kind = doc.get("kind")
    try:
        if kind == "uniform":
            return uniform_distribution(_parse_int(doc.get("n"), f"{where}.n"))
        if kind == "point":
            n = _parse_int(doc.get("n"), f"{where}.n")
            coalition = _parse_players(doc.get("coalition"), n, f"{where}.coalition")
            return point_mass(n, coalition)
        if kind == "independent":
            return independent_distribution(
                _parse_rational_list(doc.get("x"), f"{where}.x")
            )
        if kind == "size":
            return from_size_profile(_parse_rational_list(doc.get("q"), f"{where}.q"))
        if kind == "explicit":
            n = _parse_int(doc.get("n"), f"{where}.n")
            masses = _parse_rational_list(doc.get("p"), f"{where}.p")
            if len(masses) != 1 << n:
                raise SpecParseError(
                    f"{where}.p: expected {1 << n} entries, got {len(masses)}"
                )
            return explicit_distribution(n, masses)
    except SpecParseError:
        raise
    except GuardLimitError:
        raise
    except ValueError as exc:
        raise SpecParseError(f"{where}: {exc}") from None
    raise SpecParseError(
        f"{where}.kind: expected uniform|point|independent|size|explicit, got {kind!r}"
    )


def game_spec_dict(game: CoalitionalGame) -> dict:
    """Serialize a game as an explicit GameSpec; re-parsing is an exact
    round trip."""
    return {
        "kind": "explicit",
        "n": game.n,
        "values": [str(v) for v in game.values],
    }


def load_game(path: str) -> CoalitionalGame:
    return parse_game_spec(_load_json(path), where=path)


def load_dist(path: str) -> CoalitionDistribution:
    return parse_dist_spec(_load_json(path), where=path)


# ---------------------------------------------------------------------------
# output helpers


def _rational_line(values: Sequence[Fraction]) -> str:
    return ", ".join(f"{i}: {v}" for i, v in enumerate(values, start=1))


def _power_json(method: str, values, decimals, std_errors=None) -> str:
    doc: dict[str, Any] = {
        "players": len(values),
        "method": method,
        "values": [str(v) for v in values],
        "values_decimal": decimals,
    }
    if std_errors is not None:
        doc["std_error"] = list(std_errors)
    return json.dumps(doc)


def _emit_exact_power(method: str, vector: PowerVector, fmt: str) -> None:
    decimals = [decimal_approx(v) for v in vector.entries]
    if fmt == "json":
        print(_power_json(method, vector.entries, decimals))
    else:
        print(_rational_line(vector.entries))
        print("decimal: " + ", ".join(repr(d) for d in decimals))


# ---------------------------------------------------------------------------
# subcommands


def _cmd_power(args: argparse.Namespace) -> int:
    game = load_game(args.game)
    if args.method == "shapley":
        if args.engine == "mc":
            raise SpecParseError("the mc engine requires --method rollcall")
        if args.dist is not None:
            raise SpecParseError("--dist applies to --method rollcall only")
        vector = (
            shapley_by_permutations(game)
            if args.engine == "reference"
            else shapley_by_coalitions(game)
        )
        _emit_exact_power("shapley", vector, args.format)
        return EXIT_OK

    if args.dist is None:
        raise SpecParseError("--method rollcall requires --dist")
    doc = _load_json(args.dist)
    if args.engine == "mc":
        if args.samples is None:
            raise SpecParseError("--engine mc requires --samples")
        if doc.get("kind") == "independent":
            sampler = bernoulli_sampler(
                _parse_rational_list(doc.get("x"), f"{args.dist}.x")
            )
            if sampler.n != game.n:
                raise ValueError("player-count mismatch")
        else:
            sampler = sampler_from_distribution(parse_dist_spec(doc, where=args.dist))
        estimate = rollcall_value_monte_carlo(
            game, sampler, args.samples, args.seed, workers=args.workers
        )
        if args.format == "json":
            print(
                _power_json(
                    "rollcall",
                    [repr(v) for v in estimate.values],
                    list(estimate.values),
                    estimate.std_errors,
                )
            )
        else:
            print(", ".join(f"{i}: {v!r}" for i, v in enumerate(estimate.values, 1)))
            print("std_error: " + ", ".join(repr(e) for e in estimate.std_errors))
        return EXIT_OK

    dist = parse_dist_spec(doc, where=args.dist)
    engine = rollcall_value_reference if args.engine == "reference" else rollcall_value_exact
    vector = engine(game, dist)
    _emit_exact_power("rollcall", vector, args.format)
    return EXIT_OK


def _cmd_check_exchangeable(args: argparse.Namespace) -> int:
    dist = load_dist(args.dist)
    violation = exchangeability_violation(dist)
    if violation is None:
        print("exchangeable")
        return EXIT_OK
    x, i, j = violation
    mass_i = dist.pmf[x.mask | 1 << (i - 1)]
    mass_j = dist.pmf[x.mask | 1 << (j - 1)]
    print(f"violation: X={x} i={i} j={j} p={mass_i} vs {mass_j}")
    return EXIT_NEGATIVE


def _cmd_witness(args: argparse.Namespace) -> int:
    dist = load_dist(args.dist)
    witness = witness_non_exchangeability(dist)
    if witness is None:
        if args.format == "json":
            print(json.dumps({"players": dist.n, "exchangeable": True}))
        else:
            print("exchangeable; no witness exists")
        return EXIT_OK
    rollcall_vals = witness.rollcall_values
    shapley_vals = witness.shapley_values
    if args.format == "json":
        doc = {
            "players": dist.n,
            "exchangeable": False,
            "i": witness.i,
            "j": witness.j,
            "game": game_spec_dict(witness.game),
            "rollcall_values": [str(v) for v in rollcall_vals.entries],
            "rollcall_values_decimal": [decimal_approx(v) for v in rollcall_vals.entries],
            "shapley_values": [str(v) for v in shapley_vals.entries],
            "shapley_values_decimal": [decimal_approx(v) for v in shapley_vals.entries],
        }
        print(json.dumps(doc))
    else:
        print(f"witness: i={witness.i} j={witness.j}")
        print(
            f"game: explicit n={witness.game.n} values "
            + ", ".join(str(v) for v in witness.game.values)
        )
        print("rollcall value: " + _rational_line(rollcall_vals.entries))
        print("shapley value:  " + _rational_line(shapley_vals.entries))
    return EXIT_NEGATIVE


def _claims_check(rng_seed: int = 20260810) -> list[tuple[str, bool]]:
    import random

    rng = random.Random(rng_seed)
    checks: list[tuple[str, bool]] = []
    ok = all(
        alternating_binomial_sum(n) == (1 if n == 0 else 0) for n in range(21)
    )
    checks.append(("alternating binomial sum, n<=20", ok))
    ok = all(lhs == rhs for lhs, rhs in (reciprocal_sum_identity(n) for n in range(21)))
    checks.append(("reciprocal sum at k+1, n<=20", ok))
    ok = True
    for _ in range(20):
        x = Fraction(rng.randint(1, 60), rng.randint(1, 30))
        for n in range(21):
            lhs, rhs = reciprocal_sum_identity_at(n, x)
            ok = ok and lhs == rhs
    checks.append(("reciprocal sum at k+x, x>0, n<=20", ok))
    ok = True
    for _ in range(20):
        x = Fraction(rng.randint(-29, 90), 30)  # > -1
        for n in range(21):
            lhs, rhs = reciprocal_sum_identity_shifted(n, x)
            ok = ok and lhs == rhs
    checks.append(("reciprocal sum at k+1+x, x>-1, n<=20", ok))
    return checks


def _cmd_verify_lemma(args: argparse.Namespace) -> int:
    m = args.m
    if m < 0 or m > 8:
        raise GuardLimitError(f"--m must be in 0..8, got {m}")
    results = [(f"overlap matrix inverse, m={m}", verify_overlap_inverse(m))]
    results.extend(_claims_check())
    all_ok = True
    for label, ok in results:
        print(f"{label}: {'PASS' if ok else 'FAIL'}")
        all_ok = all_ok and ok
    return EXIT_OK if all_ok else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pivotal",
        description="Shapley values and roll-call pivot probabilities, exactly",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    power = sub.add_parser("power", help="per-player value of a game")
    power.add_argument("game", help="game JSON file")
    power.add_argument("--method", choices=["shapley", "rollcall"], required=True)
    power.add_argument(
        "--engine",
        choices=["reference", "exact", "mc"],
        default="exact",
        help="reference enumerates orderings; exact is the fast engine; "
        "mc samples roll calls",
    )
    power.add_argument("--dist", help="distribution JSON file (rollcall only)")
    power.add_argument("--samples", type=int, help="Monte Carlo sample count")
    power.add_argument("--seed", type=int, default=0, help="Monte Carlo seed")
    power.add_argument("--workers", type=int, default=1, help="Monte Carlo threads")
    power.add_argument("--format", choices=["table", "json"], default="table")
    power.set_defaults(func=_cmd_power)

    check = sub.add_parser(
        "check-exchangeable", help="test whether masses depend only on size"
    )
    check.add_argument("dist", help="distribution JSON file")
    check.set_defaults(func=_cmd_check_exchangeable)

    witness = sub.add_parser(
        "witness", help="build a game separating roll-call from Shapley values"
    )
    witness.add_argument("dist", help="distribution JSON file")
    witness.add_argument("--format", choices=["table", "json"], default="table")
    witness.set_defaults(func=_cmd_witness)

    lemma = sub.add_parser(
        "verify-lemma", help="self-check the inverse matrix and binomial identities"
    )
    lemma.add_argument("--m", type=int, required=True, help="ground-set size (0..8)")
    lemma.set_defaults(func=_cmd_verify_lemma)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (GuardLimitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD


def console_main() -> None:
    sys.exit(main())
