from multiprocessing import Process, Manager
import datetime
from progressbar import ProgressBar
from urbanCoverage.simulator.simulator import DropContext, drop_seeds, simulate_drop
from urbanCoverage.util import Logger, CoverageException


def process_drops_parallel(config, n_drops, nr_cores):
    """Runs drops on nr_cores worker processes.

    Drop i always uses seed substream i, so the merged drops do not depend on
    nr_cores or on completion order. A worker that exits abnormally or a drop
    that never comes back raises CoverageException.
    """
    processes = []
    manager = Manager()
    return_values = manager.dict()
    start_time = datetime.datetime.now()
    for i in range(nr_cores):
        p = Process(target=worker, args=(i, nr_cores, config, n_drops, return_values,))
        processes.append(p)
        p.start()

    for process in processes:
        process.join()
    failed = [i for i, p in enumerate(processes) if p.exitcode != 0]
    if failed:
        raise CoverageException("workers %s exited abnormally" % failed)

    #reduce
    drops = []
    for value in list(return_values.values()):
        drops.extend(value)
    if len(drops) != n_drops:
        raise CoverageException("only %s of %s drops returned by the workers" % (len(drops), n_drops))
    drops.sort(key=lambda d: d.drop_id)

    duration = datetime.datetime.now() - start_time
    Logger.warning("Parallel drops complete. Duration: %s" % duration)
    return drops


def worker(id, nr_cores, config, n_drops, return_values):
    Logger.log_level = 2
    Logger.info("spawning worker id %s" % id)
    my_drops = list(range(id, n_drops, nr_cores))
    pbar = ProgressBar(maxval=max(len(my_drops), 1)).start()
    context = DropContext(config)
    seeds = drop_seeds(config.seed, n_drops)
    results = []
    for n, drop_id in enumerate(my_drops):
        if id == 0:
            pbar.update(n)
        results.append(simulate_drop(context, drop_id, seeds[drop_id]))

    return_values[id] = results
    if id == 0:
        pbar.finish()
