"""Command-line entry points.

  npimcmc run <spec.toml> [--seed N] [--out DIR]
  npimcmc check <model> [--probes N] [--seed N]

`run` executes seeded chains described by a TOML experiment spec and
writes samples.csv (chain, step, dim, accepted, quoted semicolon-joined
trace) plus stats.json.  `check` probes a registered model for the
structural properties the samplers rely on.  Exit codes: 0 ok, 2
validation failure, 3 runtime sampler error.  NPIMCMC_THREADS caps the
chain worker pool.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

try:
    import tomllib
except ImportError:  # pragma: no cover - python < 3.11
    import tomli as tomllib

from .diagnostics import EmpiricalDist, ess, geometric_pmf, lppd, tvd
from .errors import NpimcmcError, PreconditionViolation, SpecValidationError
from .involution import (
    LeapfrogStepSpec,
    check_projection_commutation,
    leapfrog_updates,
    states_close,
    swap_involution,
)
from .model import (
    MODEL_REGISTRY,
    NeedsMore,
    check_prefix_property,
    igmm_synthetic_data,
    make_model,
)
from .sampler import (
    SamplerConfig,
    np_hmc,
    np_hmc_persistent,
    np_lookahead_hmc,
    np_mh,
    np_mh_persistent,
    run_chain,
)
from .trace_core import EntropyPair, EntropyVector, State, Trace

SPEC_VERSION = 1

SAMPLER_REGISTRY = {
    "np_mh": np_mh,
    "np_mh_persistent": np_mh_persistent,
    "np_hmc": np_hmc,
    "np_hmc_persistent": np_hmc_persistent,
    "np_lookahead_hmc": np_lookahead_hmc,
}

_DEFAULT_INITS = {
    "geometric": [False],
    "geometric_real": [-0.5],
    "conjugate_normal": [0.0],
    "igmm": [1.2, 0.0],
    "broken-fixture": [0.0],
}

_GEOMETRIC_MODELS = ("geometric", "geometric_real")

_ALLOWED_OUTPUTS = ("samples", "stats", "tvd", "ess", "lppd")


def _fail_validation(msg: str) -> "NoReturn":  # noqa: F821
    raise SpecValidationError(msg)


def _worker_count(n_chains: int) -> int:
    cap = os.environ.get("NPIMCMC_THREADS")
    if cap is not None:
        try:
            cap = int(cap)
        except ValueError:
            _fail_validation(f"NPIMCMC_THREADS={cap!r} is not an integer")
        if cap < 1:
            _fail_validation("NPIMCMC_THREADS must be >= 1")
        return min(cap, n_chains)
    return min(os.cpu_count() or 1, n_chains)


def _load_spec(path: Path) -> dict:
    try:
        with open(path, "rb") as f:
            spec = tomllib.load(f)
    except FileNotFoundError:
        _fail_validation(f"spec file not found: {path}")
    except tomllib.TOMLDecodeError as e:
        _fail_validation(f"spec file does not parse: {e}")
    if spec.get("spec_version") != SPEC_VERSION:
        _fail_validation(f"spec_version must be {SPEC_VERSION}")
    for section in ("model", "sampler", "run"):
        if section not in spec or not isinstance(spec[section], dict):
            _fail_validation(f"missing [{section}] section")
    return spec


def _build_model(section: dict):
    params = dict(section)
    name = params.pop("name", None)
    if name not in MODEL_REGISTRY:
        _fail_validation(f"unknown model {name!r}")
    if name == "igmm" and "data" not in params:
        data_seed = params.pop("data_seed", 0)
        params["data"] = igmm_synthetic_data(data_seed)
    try:
        return make_model(name, **params)
    except TypeError as e:
        _fail_validation(f"bad model params for {name}: {e}")


def _build_config(section: dict, seed_override) -> SamplerConfig:
    known = {f for f in SamplerConfig.__dataclass_fields__}
    unknown = set(section) - known
    if unknown:
        _fail_validation(f"unknown config fields: {sorted(unknown)}")
    params = dict(section)
    if seed_override is not None:
        params["seed"] = seed_override
    try:
        return SamplerConfig(**params)
    except (PreconditionViolation, TypeError) as e:
        _fail_validation(f"bad config: {e}")


def _trace_cell(t: Trace) -> str:
    return ";".join("T" if v is True else "F" if v is False else repr(v) for v in t)


def _first_real(t: Trace):
    for v in t:
        if not isinstance(v, bool):
            return float(v)
    return None


def _geometric_key(t: Trace) -> int:
    # both geometric encodings produce traces of length 2k+1
    return (len(t) - 1) // 2


def cmd_run(args) -> int:
    spec = _load_spec(Path(args.spec))
    model = _build_model(spec["model"])
    sampler_name = spec["sampler"].get("name")
    if sampler_name not in SAMPLER_REGISTRY:
        _fail_validation(f"unknown sampler {sampler_name!r}")
    cfg = _build_config(spec.get("config", {}), args.seed)
    run_sec = spec["run"]
    n_samples = run_sec.get("n_samples")
    if not isinstance(n_samples, int) or n_samples < 1:
        _fail_validation("run.n_samples must be a positive integer")
    n_chains = run_sec.get("n_chains", 1)
    burn_in = run_sec.get("burn_in", 0)
    if not isinstance(n_chains, int) or n_chains < 1:
        _fail_validation("run.n_chains must be a positive integer")
    if not isinstance(burn_in, int) or burn_in < 0:
        _fail_validation("run.burn_in must be a non-negative integer")
    outputs = run_sec.get("outputs", ["samples", "stats"])
    bad = set(outputs) - set(_ALLOWED_OUTPUTS)
    if bad:
        _fail_validation(f"unknown outputs: {sorted(bad)}")
    if "tvd" in outputs and model.name not in _GEOMETRIC_MODELS:
        _fail_validation("tvd output requires a geometric model (exact pmf known)")
    if "lppd" in outputs:
        if model.name != "igmm":
            _fail_validation("lppd output requires the igmm model")
        if "test_data" not in run_sec:
            _fail_validation("lppd output requires run.test_data")
    if "init" in run_sec:
        init = Trace(run_sec["init"])
    elif model.name == "random_walk":
        init = Trace([model.bound + 1.0])  # single step straight out of the box
    else:
        init = Trace(_DEFAULT_INITS.get(model.name, [0.0]))

    sampler = SAMPLER_REGISTRY[sampler_name](model, cfg)
    n_total = burn_in + n_samples

    def one_chain(i: int):
        return run_chain(sampler, init, n_total, cfg.seed, chain=i)

    results = [None] * n_chains
    with concurrent.futures.ThreadPoolExecutor(max_workers=_worker_count(n_chains)) as ex:
        futures = {ex.submit(one_chain, i): i for i in range(n_chains)}
        for fut in concurrent.futures.as_completed(futures):
            results[futures[fut]] = fut.result()

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    if "samples" in outputs:
        lines = ["chain,step,dim,accepted,trace"]
        for c, (samples, stats) in enumerate(results):
            for i in range(burn_in, n_total):
                t = samples[i]
                acc = 1 if stats["accepted"][i] else 0
                lines.append(f'{c},{i - burn_in},{len(t)},{acc},"{_trace_cell(t)}"')
        (out_dir / "samples.csv").write_text("\n".join(lines) + "\n")

    report = {
        "spec_version": SPEC_VERSION,
        "model": dict(spec["model"]) if model.name != "igmm" else {**spec["model"]},
        "sampler": sampler_name,
        "config": {f: getattr(cfg, f) for f in SamplerConfig.__dataclass_fields__},
        "n_samples": n_samples,
        "n_chains": n_chains,
        "burn_in": burn_in,
        "chains": [],
    }
    if model.name == "random_walk":
        report["model"].setdefault("obs_std", model.obs_std)
        report["model"].setdefault("bound", model.bound)
    pooled: list[Trace] = []
    for c, (samples, stats) in enumerate(results):
        kept = samples[burn_in:]
        pooled.extend(kept)
        chain_report = {
            "chain": c,
            "acceptance_rate": sum(stats["accepted"][burn_in:]) / n_samples,
            "extension_count_total": sum(stats["extension_counts"][burn_in:]),
            "wall_time": stats["wall_time"],
        }
        if "ess" in outputs:
            chain_report["ess_dimension"] = ess([len(t) for t in kept])
            first = [_first_real(t) for t in kept]
            if all(v is not None for v in first):
                chain_report["ess_first_coord"] = ess(first)
        report["chains"].append(chain_report)
    if "tvd" in outputs:
        emp = EmpiricalDist.from_values(_geometric_key(t) for t in pooled)
        report["tvd"] = tvd(emp, geometric_pmf)
    if "lppd" in outputs:
        report["lppd"] = lppd(pooled, model, [float(d) for d in run_sec["test_data"]])
    if "stats" in outputs or len(report) > 0:
        (out_dir / "stats.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 0


# ---------------------------------------------------------------------------
# check: structural property probing
# ---------------------------------------------------------------------------


def _forward_trace(model, gen, max_len: int = 200, max_restarts: int = 100) -> Trace:
    """Sample a supported trace by answering the model's requests with
    fresh stock draws, restarting on rejection."""
    for _ in range(max_restarts):
        values: list = []
        while len(values) <= max_len:
            res = model.run_values(values)
            if isinstance(res, NeedsMore):
                if res.next.need == "bool":
                    values.append(bool(gen.integers(0, 2)))
                else:
                    values.append(float(gen.standard_normal()))
                continue
            if res.kind == "terminated":
                return Trace(values[: res.consumed])
            break  # rejected: restart
    raise PreconditionViolation(f"could not sample a supported trace from {model.name}")


def _random_entropy_state(trace: Trace, gen, extra: int) -> State:
    pairs = []
    for v in trace:
        if isinstance(v, bool):
            pairs.append(EntropyPair(float(gen.standard_normal()), v))
        else:
            pairs.append(EntropyPair(float(v), bool(gen.integers(0, 2))))
    for _ in range(extra):
        pairs.append(EntropyPair(float(gen.standard_normal()), bool(gen.integers(0, 2))))
    x = EntropyVector(pairs)
    v = EntropyVector(
        EntropyPair(float(gen.standard_normal()), bool(gen.integers(0, 2))) for _ in x
    )
    return State(x, v)


def cmd_check(args) -> int:
    name = args.model
    if name not in MODEL_REGISTRY:
        print(f"unknown model {name!r}", file=sys.stderr)
        return 2
    params = {}
    if name == "igmm":
        params["data"] = igmm_synthetic_data(0, n_per_component=3)
    elif name == "random_walk":
        params["observed_distance"] = 3.0
        params["bound"] = 2.0
    elif name == "conjugate_normal":
        params["obs"] = 2.0
    model = make_model(name, **params)
    if args.probes == 0:
        print("WARNING: 0 probes requested; all checks pass vacuously", file=sys.stderr)
        print("PASS prefix-property (vacuous)")
        print("PASS projection-commutation (vacuous)")
        print("PASS involution-laws (vacuous)")
        return 0

    gen = np.random.default_rng(args.seed)
    probes = []
    for _ in range(args.probes):
        t = _forward_trace(model, gen)
        extra = int(gen.integers(0, 3))
        probe = list(t) + [
            bool(gen.integers(0, 2)) if gen.random() < 0.3 else float(gen.standard_normal())
            for _ in range(extra)
        ]
        probes.append(Trace(probe))

    ok = True

    report = check_prefix_property(model, probes)
    if report.ok:
        print(f"PASS prefix-property ({report.probes} probes)")
    else:
        ok = False
        print(f"FAIL prefix-property: {len(report.violations)} traces with multiple supported prefixes")

    swap = swap_involution()
    a3_ok = True
    for _ in range(args.probes):
        t = _forward_trace(model, gen)
        extra = int(gen.integers(0, 3))
        state = _random_entropy_state(t, gen, extra)
        k = int(gen.integers(len(t), state.dim + 1))
        if not check_projection_commutation(swap, model, state, k):
            a3_ok = False
            break
    if a3_ok:
        print(f"PASS projection-commutation ({args.probes} scenarios)")
    else:
        ok = False
        print("FAIL projection-commutation")

    inv_ok = True
    for _ in range(args.probes):
        t = _forward_trace(model, gen)
        state = _random_entropy_state(t, gen, int(gen.integers(0, 3)))
        if not states_close(swap.apply(swap.apply(state)), state):
            inv_ok = False
            break
    # leapfrog laws only where orbits cannot leave the support (fixed-dim model)
    if inv_ok and name == "conjugate_normal":
        spec = LeapfrogStepSpec(2, 0.05, model)
        for _ in range(min(args.probes, 20)):
            t = _forward_trace(model, gen)
            q = np.array(t, dtype=float)
            p = gen.standard_normal(len(q))
            s = State(q, p)
            for fam in leapfrog_updates(spec, True):
                if not states_close(fam.inverse(fam.apply(s)), s, atol=1e-9):
                    inv_ok = False
                    break
                s = fam.apply(s)
            if not inv_ok:
                break
    if inv_ok:
        print("PASS involution-laws")
    else:
        ok = False
        print("FAIL involution-laws")

    return 0 if ok else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="npimcmc")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the experiment described by a TOML spec")
    p_run.add_argument("spec")
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--out", default=".")

    p_check = sub.add_parser("check", help="probe a model's structural properties")
    p_check.add_argument("model")
    p_check.add_argument("--probes", type=int, default=100)
    p_check.add_argument("--seed", type=int, default=0)

    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return cmd_run(args)
        return cmd_check(args)
    except SpecValidationError as e:
        print(f"validation error: {e}", file=sys.stderr)
        return 2
    except NpimcmcError as e:
        print(f"runtime error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
