#!/usr/bin/env python
import argparse
import datetime
import os
import sys
import numpy as np
from progressbar import ProgressBar
from urbanCoverage.config.scenarioConfig import load_config, load_preset, config_hash, save_config
from urbanCoverage.exporter import exporter
from urbanCoverage.grid.grid import (LocationClass, build_grid, in_diamond, assign_building_classes,
                                     loss_class_codes)
from urbanCoverage.link.linkBudget import LinkResult
from urbanCoverage.propagation.pathGain import calibrate_corner
from urbanCoverage.propagation.penetration import bpl_curves
from urbanCoverage.simulator.receivedPower import (EvaluationPoints, evaluate_points, received_power,
                                                   select_serving, serving_sectors, population_masks)
from urbanCoverage.simulator.simulationResult import (CoverageResult, DropResult, HeatmapSnapshot,
                                                      save_simulation_result)
from urbanCoverage.simulator.streetMaps import build_street_pg_maps
from urbanCoverage.stats.shadowFading import DropShadows, FieldShadows, NoShadows
from urbanCoverage.util import Logger, CoverageException

DEFAULT_PRESET = "paper-28ghz-1w"


class DropContext(object):
    """Everything that stays fixed across drops: the world, the diamond
    points and the median street gains."""

    def __init__(self, config):
        self.config = config
        self.world = build_grid(config.grid)
        self.sites = config.sites
        world = self.world
        grid_x, grid_y = np.meshgrid(world.xs, world.ys)
        region = in_diamond(grid_x, grid_y, self.sites.center, self.sites.diamond_radius_m) & ~world.ignored_mask
        self.points = EvaluationPoints(world, grid_x[region], grid_y[region])
        self.masks = population_masks(world, self.sites, self.points)
        self.street_maps = build_street_pg_maps(world, self.sites, config.models)
        Logger.info("diamond region holds %s indoor and %s outdoor points" % (
            int(self.masks["indoor"].sum()), int(self.masks["outdoor"].sum())))


def drop_seeds(seed, n_drops):
    return np.random.SeedSequence(seed).spawn(n_drops)


def simulate_drop(context, drop_id, seed_sequence):
    """One drop: fresh building classes and independent shadowing for every UE, BS and path."""
    config = context.config
    rng = np.random.default_rng(seed_sequence)
    buildings = assign_building_classes(context.world.buildings, config.p_high, rng)
    context.points.set_building_classes(loss_class_codes(buildings))
    shadows = DropShadows(rng, config.fading) if config.fading.enabled else NoShadows()
    result = evaluate_points(context.world, context.sites, config.models, config.link, config.bpl,
                             context.points, shadows, context.street_maps)
    return DropResult(drop_id, result, context.masks)


def run_drops(config, n_drops=None, n_cores=None):
    n_drops = config.n_drops if n_drops is None else n_drops
    n_cores = config.n_cores if n_cores is None else n_cores
    if n_drops < 1:
        raise ValueError("n_drops must be at least 1")
    start_time = datetime.datetime.now()
    if n_cores > 1:
        from urbanCoverage.multiprocessing.multicoreSimulation import process_drops_parallel
        drops = process_drops_parallel(config, n_drops, n_cores)
    else:
        context = DropContext(config)
        seeds = drop_seeds(config.seed, n_drops)
        drops = []
        pbar = ProgressBar(maxval=n_drops).start()
        for drop_id in range(n_drops):
            drops.append(simulate_drop(context, drop_id, seeds[drop_id]))
            pbar.update(drop_id + 1)
        pbar.finish()
    duration = datetime.datetime.now() - start_time
    Logger.info("%s drops complete. Duration: %s" % (n_drops, duration))
    return CoverageResult(config.echo(), config.seed, config_hash(config), drops)


def snapshot_heatmap(config, seed=None):
    """Single-instant SNR map of the whole grid with spatially correlated shadowing."""
    seed = config.seed if seed is None else seed
    world = build_grid(config.grid)
    sites = config.sites
    class_seed, field_seed = np.random.SeedSequence(seed).spawn(2)
    buildings = assign_building_classes(world.buildings, config.p_high, np.random.default_rng(class_seed))
    codes = loss_class_codes(buildings)

    grid_x, grid_y = np.meshgrid(world.xs, world.ys)
    evaluated = ~world.ignored_mask
    points = EvaluationPoints(world, grid_x[evaluated], grid_y[evaluated], codes)
    shadows = FieldShadows(world, config.fading, field_seed, sites.n_bs) if config.fading.enabled else NoShadows()
    street_maps = build_street_pg_maps(world, sites, config.models)
    rx = received_power(world, sites, config.models, config.link, config.bpl, points, shadows, street_maps)
    serving, serving_dbm, interference_dbm = select_serving(rx)
    link_result = LinkResult(serving, serving_dbm, interference_dbm, config.link)

    def as_grid(values, fill, dtype=float):
        grid = np.full(world.shape, fill, dtype=dtype)
        grid[evaluated] = values
        return grid

    return HeatmapSnapshot(grid_x, grid_y, world.classify(sites),
                           as_grid(link_result.snr_db, np.nan), as_grid(link_result.sinr_db, np.nan),
                           as_grid(serving, -1, np.int16), as_grid(serving_sectors(sites, points, serving), -1, np.int8),
                           world.building_id, codes, seed, config_hash(config))


def snapshot_fields(config, seed=None, bs_index=0):
    """LOS, NLOS and unit indoor shadow layers that snapshot_heatmap uses for one BS."""
    seed = config.seed if seed is None else seed
    world = build_grid(config.grid)
    _, field_seed = np.random.SeedSequence(seed).spawn(2)
    return FieldShadows(world, config.fading, field_seed, config.sites.n_bs).layers(bs_index)


def heatmap_summary(snapshot):
    summary = {"seed": snapshot.seed, "config_sha256": snapshot.config_hash}
    for location in LocationClass:
        mask = snapshot.classes == location.value
        if location is not LocationClass.IGNORED and mask.any():
            summary["mean_snr_db_%s" % location.name.lower()] = snapshot.mean_snr(mask)
    return summary


def resolve_config(args):
    overrides = {"seed": args.seed, "n_drops": args.drops, "n_cores": args.cores, "out_dir": args.out_dir}
    if args.config is not None:
        return load_config(args.config, preset=args.preset, **overrides)
    return load_preset(args.preset or DEFAULT_PRESET, **overrides)


def run_simulate(args):
    config = resolve_config(args)
    os.makedirs(config.out_dir, exist_ok=True)
    result = run_drops(config)
    exporter.export_results(result, config.out_dir)
    save_config(config, os.path.join(config.out_dir, "scenario.cfg"))
    save_simulation_result(result, os.path.join(config.out_dir, "coverage_result.pickle"))
    for population in ("indoor", "outdoor"):
        Logger.info("%s: outage %.1f%%, edge rate %.0f Mbps, median rate %.0f Mbps" % (
            population, 100 * result.outage_fraction(population), result.edge_rate(population) / 1e6,
            result.median_rate(population) / 1e6))


def run_heatmap(args):
    config = resolve_config(args)
    os.makedirs(config.out_dir, exist_ok=True)
    snapshot = snapshot_heatmap(config)
    exporter.export_heatmap(snapshot, os.path.join(config.out_dir, "heatmap.csv"))
    exporter.export_classification(snapshot, os.path.join(config.out_dir, "classification.csv"))
    exporter.export_summary(heatmap_summary(snapshot), os.path.join(config.out_dir, "heatmap_summary.json"))
    if args.export_fields:
        for name, field in zip(("los", "nlos", "indoor"), snapshot_fields(config)):
            exporter.export_field(field, os.path.join(config.out_dir, "field_bs0_%s.csv" % name), snapshot.seed,
                                  snapshot.config_hash, config.grid.resolution_m)
    save_config(config, os.path.join(config.out_dir, "scenario.cfg"))


def run_bpl_curves(args):
    config = resolve_config(args)
    os.makedirs(config.out_dir, exist_ok=True)
    freqs = np.arange(args.fmin, args.fmax + args.step / 2.0, args.step)
    exporter.export_bpl_curves(bpl_curves(freqs), os.path.join(config.out_dir, "bpl_curves.csv"), config.seed,
                               config_hash(config))


def run_calibrate_corner(args):
    corner = calibrate_corner(args.target_pl_db, args.dc, args.x, args.intercept_db, args.exponent)
    print("corner_loss_db = %.3f" % corner.corner_loss_db)


def main(argv=None):
    arg_parser = argparse.ArgumentParser(description="Drop-based dense-urban outdoor and outdoor-to-indoor "
                                                     "coverage simulator")
    arg_parser.add_argument("--config", help="scenario file with one 'key = value' per line")
    arg_parser.add_argument("--preset", help="named scenario preset, default %s" % DEFAULT_PRESET)
    arg_parser.add_argument("--seed", type=int, help="master random seed")
    arg_parser.add_argument("--drops", type=int, help="number of drops")
    arg_parser.add_argument("--cores", type=int, help="number of worker processes")
    arg_parser.add_argument("--out-dir", dest="out_dir", help="directory the results are written to")
    arg_parser.add_argument("--verbose", action="store_true", help="print debug output")
    subparsers = arg_parser.add_subparsers(dest="command")
    subparsers.required = True
    subparsers.add_parser("simulate", help="run drops and export CDFs and the summary")
    heatmap = subparsers.add_parser("heatmap", help="export a single-instant SNR map of the whole grid")
    heatmap.add_argument("--export-fields", dest="export_fields", action="store_true",
                         help="also export the shadow layers of the centre BS")
    curves = subparsers.add_parser("bpl-curves", help="export building penetration loss versus frequency")
    curves.add_argument("--fmin", type=float, default=0.5, help="lowest frequency in GHz")
    curves.add_argument("--fmax", type=float, default=100.0, help="highest frequency in GHz")
    curves.add_argument("--step", type=float, default=0.5, help="frequency step in GHz")
    corner = subparsers.add_parser("calibrate-corner", help="solve the corner loss from a path-loss anchor")
    corner.add_argument("--target-pl-db", dest="target_pl_db", type=float, default=135.0)
    corner.add_argument("--dc", type=float, default=100.0, help="distance from the site to the corner in m")
    corner.add_argument("--x", type=float, default=190.0, help="total distance along the streets in m")
    corner.add_argument("--intercept-db", dest="intercept_db", type=float, default=-35.0)
    corner.add_argument("--exponent", type=float, default=3.0)
    args = arg_parser.parse_args(argv)
    if args.verbose:
        Logger.log_level = 4

    commands = {"simulate": run_simulate, "heatmap": run_heatmap, "bpl-curves": run_bpl_curves,
                "calibrate-corner": run_calibrate_corner}
    try:
        commands[args.command](args)
    except CoverageException as e:
        Logger.error(str(e))
        sys.exit(127)
    except (IOError, OSError) as e:
        Logger.error("I/O failure: %s" % e)
        sys.exit(127)


if __name__ == '__main__':
    main()
