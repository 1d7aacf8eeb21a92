from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from pimlang.log import get_logger
from pimlang.schemas.trace import TraceTable

log = get_logger(__name__)

Runner = Callable[[np.random.SeedSequence], TraceTable]


def run_replicates(
    runner: Runner, count: int, seed: int, workers: int = 1
) -> list[TraceTable]:
    """
    Runs `count` independent replicates on a thread pool.

    Each replicate gets its own child of `SeedSequence(seed)`, so the results do not
    depend on the number of workers or on scheduling.

    Args:
        runner (Runner): Simulates one replicate from a seed sequence.
        count (int): Number of replicates.
        seed (int): Root seed.
        workers (int): Maximum number of threads.

    Returns:
        list[TraceTable]: Replicate traces in seed order.
    """
    seeds = np.random.SeedSequence(seed).spawn(count)
    log.debug("running %d replicates on %d worker(s)", count, workers)
    if workers <= 1 or count <= 1:
        return [runner(child) for child in seeds]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(runner, seeds))
