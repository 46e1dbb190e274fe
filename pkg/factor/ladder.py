"""Retry ladder: colour choice x starting configuration until a usable factor appears."""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from factor.assemble import coloring_to_factor
from factor.coloring import COLOURS, GWColoring, cut_along, grey_white, three_coloring
from factor.configurations import Configuration, configurations
from factor.cut_path import build_cut_path
from factor.resolve import DEFAULT_BUDGET, resolve_clusters
from factor.two_factor import TwoFactor
from factor.x_paths import shorten_all
from logging_system import get_logger
from planar.dual import DualGraph
from planar.embedding import PlanarEmbedding
from planar.exceptions import ClusterUnresolvable, FactorInvalid

logger = get_logger(__name__)


@dataclass
class FactorOutcome:
    """Winning attempt of the ladder."""

    coloring: GWColoring
    factor: TwoFactor
    choice: int
    start_config: int
    attempts: int
    failures: List[str] = field(default_factory=list)


def direct_check_configs(configs: Sequence[Configuration]) -> List[Configuration]:
    """Configurations whose cluster is settled by checking the graph directly."""
    return [c for c in configs if c.cluster.direct_check]


def initial_coloring(
    embedding: PlanarEmbedding,
    choice: int,
    start_config: int = 0,
    configs: Optional[Sequence[Configuration]] = None,
    dual: Optional[DualGraph] = None,
) -> GWColoring:
    """Cut, 3-colour and make class ``choice`` grey, before any repair."""
    path = build_cut_path(embedding, start_config, configs, dual)
    cut = cut_along(embedding, path)
    return grey_white(embedding, cut, three_coloring(cut), choice)


def build_factor(
    embedding: PlanarEmbedding,
    choices: Sequence[int] = COLOURS,
    budget: int = DEFAULT_BUDGET,
    configs: Optional[Sequence[Configuration]] = None,
    dual: Optional[DualGraph] = None,
) -> FactorOutcome:
    """First usable factor over every colour choice and starting configuration.

    Raises:
        FactorInvalid: Every attempt failed
    """
    dual = dual or DualGraph.of(embedding)
    configs = list(configs) if configs is not None else configurations(embedding, dual)
    starts = [c.index for c in configs if c.pentagons] or [0]
    failures: List[str] = []
    attempts = 0
    for start in starts:
        for choice in choices:
            attempts += 1
            try:
                coloring = initial_coloring(embedding, choice, start, configs, dual)
                coloring = shorten_all(coloring)
                coloring = resolve_clusters(embedding, coloring, budget, configs=configs, dual=dual)
                factor = coloring_to_factor(embedding, coloring)
            except (FactorInvalid, ClusterUnresolvable) as exc:
                failures.append(f"choice {choice}, start {start}: {exc}")
                logger.debug(f"Ladder attempt {attempts} failed: {exc}")
                continue
            logger.debug(
                f"Ladder attempt {attempts} (choice {choice}, start {start}) gave c={factor.n_cycles}"
            )
            return FactorOutcome(coloring, factor, choice, start, attempts, failures)
    raise FactorInvalid(f"All {attempts} colouring attempts failed; last: {failures[-1] if failures else 'none'}")
