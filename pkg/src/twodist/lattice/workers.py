"""Process pool execution of a partitioned short vector search"""

import warnings
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Sequence, Tuple

from tqdm import tqdm

from .enumeration import BlockConsumer, SearchPlan, search_blocks, search_prefixes

__all__ = ["parallel_reduce", "run_subtree"]


def __dir__():
    return __all__


PREFIX_DEPTH = 2


def run_subtree(plan: SearchPlan, template: BlockConsumer, prefix: Tuple[int, ...]) -> BlockConsumer:
    """Reduce the subtree below ``prefix`` into a fresh copy of ``template``"""
    consumer = template.fresh()
    for block in search_blocks(plan, prefix):
        consumer.consume(block)
    return consumer


def parallel_reduce(
    plan: SearchPlan,
    consumer: BlockConsumer,
    workers: int,
    progress: bool = False,
    depth: int = PREFIX_DEPTH,
) -> BlockConsumer:
    """
    Split the search below its top ``depth`` levels and reduce the subtrees
    in a process pool. Results are merged in prefix order, so the merged
    consumer does not depend on scheduling.

    Args:
        plan (~twodist.lattice.enumeration.SearchPlan): picklable search data.
        consumer (~twodist.lattice.enumeration.BlockConsumer): receives the
          merged result; its :meth:`fresh` copies are sent to the workers.
        workers (``int``): number of processes.
        progress (``bool``, default ``False``): show a progress bar over subtrees.
        depth (``int``, default ``2``): number of top levels fixed per task.

    Returns:
        ~twodist.lattice.enumeration.BlockConsumer:
        ``consumer`` after merging all partial results.
    """
    if plan.rank < 2:
        for block in search_blocks(plan):
            consumer.consume(block)
        return consumer
    prefixes: Sequence[Tuple[int, ...]] = search_prefixes(plan, depth)
    if len(prefixes) < workers:
        warnings.warn(
            f"Only {len(prefixes)} subtrees for {workers} workers.", category=RuntimeWarning
        )
    task = partial(run_subtree, plan, consumer.fresh())
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = pool.map(task, prefixes, chunksize=1)
        for result in tqdm(
            results,
            total=len(prefixes),
            disable=not progress,
            unit="subtree",
            bar_format="{l_bar}{bar:20}{r_bar}{bar:-20b}",
        ):
            consumer.merge(result)
    return consumer
