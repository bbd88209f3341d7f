"""Experiment configuration: JSON schema, validation and canonical echo.

Schema (all other top-level keys are rejected)::

    {
      "L": 15,                      # odd modulus >= 3
      "lattice": {"a": 3, "b": 5},  # steps dividing L
      "generators": [ <builder spec>, ... ],
      "averagers":  [ <builder spec>, ... ],   # optional; default: generators
      "seed": 12345,                # required when anything random is drawn
      "c_matrix": "zero",           # or "random": free parameter of the left inverse
      "tolerance": 1e-8,            # roundtrip error gate
      "tol_pos": 1e-10              # relative positivity gate for spectra
    }

Builder specs are documented in ``builders``.  Complex values never
appear in configs; reports serialize them as [re, im] pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .builders import spec_uses_rng, validate_builder_spec
from .errors import ConfigError

__all__ = ["ExperimentConfig", "parse_config", "load_config", "config_echo"]

_TOP_KEYS = {"L", "lattice", "generators", "averagers", "seed", "c_matrix",
             "tolerance", "tol_pos"}


@dataclass(frozen=True)
class ExperimentConfig:
    L: int
    a: int
    b: int
    generators: tuple[dict, ...]
    averagers: tuple[dict, ...] | None
    seed: int | None
    c_matrix: str
    tolerance: float
    tol_pos: float

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def m(self) -> int:
        return len(self.averagers) if self.averagers is not None else self.n

    @property
    def effective_averagers(self) -> tuple[dict, ...]:
        return self.averagers if self.averagers is not None else self.generators

    @property
    def uses_rng(self) -> bool:
        specs = self.generators + self.effective_averagers
        return any(spec_uses_rng(s) for s in specs) or self.c_matrix == "random"


def parse_config(data) -> ExperimentConfig:
    if not isinstance(data, dict):
        raise ConfigError("top level must be a JSON object")
    extra = set(data) - _TOP_KEYS
    if extra:
        raise ConfigError(f"unknown top-level keys {sorted(extra)}")

    L = data.get("L")
    if not isinstance(L, int) or isinstance(L, bool):
        raise ConfigError("must be an integer", field="L")
    if L < 3 or L % 2 == 0:
        raise ConfigError(f"must be odd and >= 3, got {L}", field="L")

    lattice = data.get("lattice")
    if not isinstance(lattice, dict) or set(lattice) != {"a", "b"}:
        raise ConfigError("must be an object {\"a\": ..., \"b\": ...}", field="lattice")
    steps = {}
    for name in ("a", "b"):
        v = lattice[name]
        if not isinstance(v, int) or isinstance(v, bool) or v < 1 or L % v != 0:
            raise ConfigError(f"must be a positive divisor of L={L}, got {v!r}",
                              field=f"lattice.{name}")
        steps[name] = v

    gens = data.get("generators")
    if not isinstance(gens, list) or not gens:
        raise ConfigError("must be a non-empty list of builder specs", field="generators")
    gens = tuple(validate_builder_spec(s, L, field=f"generators[{i}]")
                 for i, s in enumerate(gens))

    avgs = data.get("averagers")
    if avgs is not None:
        if not isinstance(avgs, list) or not avgs:
            raise ConfigError("must be a non-empty list of builder specs", field="averagers")
        avgs = tuple(validate_builder_spec(s, L, field=f"averagers[{i}]")
                     for i, s in enumerate(avgs))
        if len(avgs) < len(gens):
            raise ConfigError(
                f"need at least as many averagers as generators (M >= N), got M={len(avgs)}, N={len(gens)}",
                field="averagers")

    seed = data.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)
                             or not (0 <= seed < 2**64)):
        raise ConfigError("must be an unsigned 64-bit integer", field="seed")

    c_matrix = data.get("c_matrix", "zero")
    if c_matrix not in ("zero", "random"):
        raise ConfigError(f"must be 'zero' or 'random', got {c_matrix!r}", field="c_matrix")

    tolerance = data.get("tolerance", 1e-8)
    if not isinstance(tolerance, (int, float)) or isinstance(tolerance, bool) or tolerance <= 0:
        raise ConfigError("must be a positive number", field="tolerance")

    tol_pos = data.get("tol_pos", 1e-10)
    if not isinstance(tol_pos, (int, float)) or isinstance(tol_pos, bool) or tol_pos <= 0:
        raise ConfigError("must be a positive number", field="tol_pos")

    cfg = ExperimentConfig(L=L, a=steps["a"], b=steps["b"], generators=gens,
                           averagers=avgs, seed=seed, c_matrix=c_matrix,
                           tolerance=float(tolerance), tol_pos=float(tol_pos))
    if cfg.uses_rng and seed is None:
        raise ConfigError("a seed is required whenever a random builder or "
                          "c_matrix='random' is used", field="seed")
    return cfg


def load_config(path) -> ExperimentConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path} at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    return parse_config(data)


def config_echo(cfg: ExperimentConfig) -> dict:
    """Canonical JSON-ready form; parse(config_echo(parse(x))) == parse(x)."""
    out = {
        "L": cfg.L,
        "lattice": {"a": cfg.a, "b": cfg.b},
        "generators": [dict(s) for s in cfg.generators],
    }
    if cfg.averagers is not None:
        out["averagers"] = [dict(s) for s in cfg.averagers]
    if cfg.seed is not None:
        out["seed"] = cfg.seed
    out["c_matrix"] = cfg.c_matrix
    out["tolerance"] = cfg.tolerance
    out["tol_pos"] = cfg.tol_pos
    return out
