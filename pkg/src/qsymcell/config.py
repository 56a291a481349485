"""Default bounds for the exhaustive and sampled sweeps."""
from __future__ import annotations

import argparse
from dataclasses import asdict, dataclass, fields


@dataclass(frozen=True)
class TheoremMainConfig:
    max_n: int = 6
    stop_on_violation: bool = False


@dataclass(frozen=True)
class TransferConfig:
    max_total: int = 10


@dataclass(frozen=True)
class JacobiTrudiConfig:
    max_cells: int = 10
    per_shape: int = 20
    seed: int = 0
    exhaustive_cells: int = 10
    sample_shapes: int | None = None


@dataclass(frozen=True)
class TwoRowConfig:
    max_total: int = 9


@dataclass(frozen=True)
class ConjectureConfig:
    max_n: int = 8


@dataclass(frozen=True)
class OracleConfig:
    trials: int = 500
    max_n: int = 7
    seed: int = 0


@dataclass(frozen=True)
class AlgebraConfig:
    max_deg: int = 4
    spec_deg: int = 5
    precision: int = 12


def as_kwargs(cfg) -> dict:
    return asdict(cfg)


def add_arguments(parser: argparse.ArgumentParser, cls) -> None:
    """One ``--option`` per field of the config dataclass ``cls``."""
    for f in fields(cls):
        flag = "--" + f.name.replace("_", "-")
        if f.default is False:
            parser.add_argument(flag, action="store_true")
        elif f.default is None:
            parser.add_argument(flag, type=int, default=None)
        else:
            parser.add_argument(flag, type=type(f.default), default=f.default)


def from_args(cls, args: argparse.Namespace):
    return cls(**{f.name: getattr(args, f.name) for f in fields(cls)})
