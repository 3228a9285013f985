"""Command line front end.

Each subcommand runs one experiment and writes its results in
`<results>/<command>/<preset>-q<q>-h<h>/`, with a manifest:

    hermcodes classify --preset parabolic4 --q 3
    hermcodes census --kind quadric --n 4 --q 2
    hermcodes census --variety hyperbolic3 --other cone --q 3
    hermcodes spectrum --variety hermitian4 --q 4
    hermcodes scan-max --variety rank3cone4 --q 3
    hermcodes conjectures --which 2 --t 2
    hermcodes construct --t 3
    hermcodes create-config

Errors are converted to exit values by `handle_all_exceptions`.
"""

import argparse
import logging
import sys

from hermcodes.codes import (
    SpectrumCapError,
    build_code,
    hermitian_code_weights,
    weight_spectrum,
)
from hermcodes.config import (
    CONFIG_FILE,
    CONFIG_RESOURCE,
    create_config_file,
    create_logger,
    load_config,
    set_loglevel,
)
from hermcodes.exceptions import generate_exception_handler, handle_all_exceptions
from hermcodes.forms import classification_census, classify, variety_points
from hermcodes.geometry_classify import (
    conjecture_one,
    conjecture_two,
    construct_pair_configurations,
    verify_weight_theorems,
)
from hermcodes.gf_arith import field_from_order
from hermcodes.intersect import (
    PG3_TYPES,
    ScanCapError,
    check_scan_bounds,
    hermitian_quadric_census,
    leep_schueller_bound,
    leep_schueller_check,
    max_intersection_scan,
    quadric_pair_census,
)
from hermcodes.presets import PRESETS, format_form, make_preset, parse_form
from hermcodes.progress_bar import select_bar
from hermcodes.results import (
    RunManifest,
    SpectrumCache,
    result_directory,
    write_csv,
    write_json,
)
from hermcodes.utils import array_checksum
from hermcodes.version import __version__

BUGTRACKER_URL = "https://github.com/hermcodes/hermcodes/issues"

logger = logging.getLogger(__name__)

handle_spectrum_cap_error = generate_exception_handler(
    SpectrumCapError, "Use the sampled mode: --mode sampled --samples <number>"
)

handle_scan_cap_error = generate_exception_handler(
    ScanCapError, "Use the sampled mode: --mode sampled --samples <number>"
)


def get_parser():
    """Create the parser of the command line.

    Returns:
        argparse.ArgumentParser: The parser.
    """
    parser = argparse.ArgumentParser(
        prog="hermcodes",
        description="Functional codes on quadrics and hermitian varieties",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="config file, the user one by default")
    parser.add_argument(
        "-d", "--debug", action="store_true", help="show debug logs and tracebacks"
    )
    parser.add_argument(
        "--threads", type=int, help="number of threads, 0 for one per CPU"
    )
    parser.add_argument(
        "--no-progress", action="store_true", help="do not display progress bars"
    )

    subparsers = parser.add_subparsers(title="commands", dest="command", required=True)

    classify_parser = subparsers.add_parser(
        "classify", help="classify a variety against the tables"
    )
    source = classify_parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", choices=sorted(PRESETS), help="named variety")
    source.add_argument(
        "--form", help="comma separated coefficients, upper triangular row-major"
    )
    classify_parser.add_argument(
        "--kind", choices=["quadric", "hermitian"], default="quadric"
    )
    classify_parser.add_argument("--n", type=int, default=4, help="dimension")
    classify_parser.add_argument("--q", type=int, required=True, help="field order")
    classify_parser.set_defaults(function=classify_command)

    census_parser = subparsers.add_parser(
        "census", help="classify many forms, or count pair intersections in PG(3, q)"
    )
    census_parser.add_argument(
        "--kind", choices=["quadric", "hermitian"], default="quadric"
    )
    census_parser.add_argument("--n", type=int, default=4, help="dimension")
    census_parser.add_argument("--q", type=int, required=True, help="field order")
    census_parser.add_argument(
        "--samples", type=int, help="number of random forms, all forms if not given"
    )
    census_parser.add_argument(
        "--variety", choices=sorted(PRESETS), help="fixed variety of PG(3, q)"
    )
    census_parser.add_argument(
        "--other", choices=PG3_TYPES, default="hyperbolic", help="type of the quadrics"
    )
    census_parser.set_defaults(function=census_command)

    spectrum_parser = subparsers.add_parser(
        "spectrum", help="weight spectrum of a functional code"
    )
    add_enumeration_arguments(spectrum_parser)
    spectrum_parser.add_argument(
        "--no-cache", action="store_true", help="do not use the spectrum cache"
    )
    spectrum_parser.set_defaults(function=spectrum_command)

    scan_parser = subparsers.add_parser(
        "scan-max", help="largest intersection of a variety with forms"
    )
    add_enumeration_arguments(scan_parser)
    scan_parser.set_defaults(function=scan_command)

    conjectures_parser = subparsers.add_parser(
        "conjectures", help="confront the conjectures with computations"
    )
    conjectures_parser.add_argument("--which", type=int, choices=[1, 2], required=True)
    conjectures_parser.add_argument("--t", type=int, default=2, help="field order t²")
    conjectures_parser.add_argument(
        "--degrees", type=int, nargs="+", default=[1, 2], help="degrees h of the bound"
    )
    conjectures_parser.add_argument(
        "--dimensions",
        type=int,
        nargs="+",
        choices=[3, 4],
        default=[3, 4],
        help="dimensions N of the pairs of hyperplanes",
    )
    conjectures_parser.set_defaults(function=conjectures_command)

    construct_parser = subparsers.add_parser(
        "construct", help="build the hermitian pair configurations"
    )
    construct_parser.add_argument("--t", type=int, default=3, help="field order t²")
    construct_parser.set_defaults(function=construct_command)

    create_config_parser = subparsers.add_parser(
        "create-config", help="create the user config file"
    )
    create_config_parser.add_argument(
        "--force", action="store_true", help="overwrite an existing file"
    )
    create_config_parser.set_defaults(function=create_config_command)

    return parser


def add_enumeration_arguments(parser):
    parser.add_argument(
        "--variety", choices=sorted(PRESETS), required=True, help="named variety"
    )
    parser.add_argument("--q", type=int, required=True, help="field order")
    parser.add_argument("--h", type=int, default=2, help="degree of the forms")
    parser.add_argument(
        "--mode", choices=["exhaustive", "sampled"], default="exhaustive"
    )
    parser.add_argument("--samples", type=int, help="size of the sampled mode")
    parser.add_argument("--out", help="root of the result tree")


def get_threads(args, config):
    if args.threads is not None:
        return args.threads

    return config.get("threads", 0)


def get_bar(args, config):
    return select_bar(config.get("progress", True) and not args.no_progress)


def get_results_root(args, config):
    return getattr(args, "out", None) or config.get("results", "results")


def field_manifest(field):
    return (field.p, field.e)


def classify_command(args, config):
    """Print the class of a variety."""
    field = field_from_order(args.q)
    if args.preset:
        form = make_preset(args.preset, field)
        name = args.preset

    else:
        form = parse_form(args.form, args.kind, args.n, field)
        name = format_form(form)

    variety_class = classify(form)
    print("{}: {}".format(name, variety_class.describe()))


def census_command(args, config):
    """Write a classification census or a PG(3, q) pair census."""
    field = field_from_order(args.q)
    root = get_results_root(args, config)

    if args.variety:
        manifest = RunManifest(
            "census",
            {"variety": args.variety, "other": args.other, "q": args.q},
            field_manifest(field),
            preset=args.variety,
            mode="exhaustive",
        )
        variety = make_preset(args.variety, field)
        if variety.kind == "hermitian":
            census = hermitian_quadric_census(variety, args.other)

        else:
            census = quadric_pair_census(variety, args.other)

        directory = result_directory(
            root, "census", "{}-{}".format(args.variety, args.other), args.q
        )
        write_csv(
            directory / "data.csv", ["lines", "points", "quadrics"], census.rows()
        )
        write_json(directory / "report.json", census.as_dict())
        manifest.add_file(directory / "data.csv")
        manifest.add_file(directory / "report.json")
        manifest.write(directory)
        print(
            "{} quadrics of type {}: {}".format(
                census.quadrics,
                args.other,
                "within the caps" if census.passed else "caps exceeded",
            )
        )
        return

    seed = config.get("seed", 0)
    manifest = RunManifest(
        "census",
        {"kind": args.kind, "n": args.n, "q": args.q, "samples": args.samples},
        field_manifest(field),
        mode="sampled" if args.samples else "exhaustive",
    )
    counts = classification_census(args.kind, args.n, field, args.samples, seed)
    directory = result_directory(
        root, "census", "{}{}".format(args.kind, args.n), args.q
    )
    write_csv(directory / "data.csv", ["label", "forms"], counts.items())
    manifest.add_file(directory / "data.csv")
    manifest.write(directory)
    for label, count in sorted(counts.items()):
        print("{}: {}".format(label, count))


def compute_spectrum(args, config, code, preset, use_cache=True):
    """Give the spectrum of a code, from the cache if possible."""
    seed = config.get("seed", 0)
    mode = getattr(args, "mode", "exhaustive")
    samples = getattr(args, "samples", None)
    cache = SpectrumCache(config.cache_directory)
    if use_cache:
        spectrum = cache.load(preset, code, mode, samples, seed)
        if spectrum is not None:
            return spectrum

    with handle_spectrum_cap_error():
        spectrum = weight_spectrum(
            code,
            mode=mode,
            samples=samples,
            seed=seed,
            threads=get_threads(args, config),
            representatives=config.get("representatives", 64),
            bar=get_bar(args, config),
        )

    cache.store(preset, code, spectrum)
    return spectrum


def spectrum_command(args, config):
    """Write the weight spectrum of a code and its verification."""
    field = field_from_order(args.q)
    variety = make_preset(args.variety, field)
    code = build_code(variety, args.h)
    manifest = RunManifest(
        "spectrum",
        {
            "variety": args.variety,
            "q": args.q,
            "h": args.h,
            "n": code.length,
            "k": code.dimension,
            "generator": array_checksum(code.generator),
            "samples": args.samples,
        },
        field_manifest(field),
        preset=args.variety,
        mode=args.mode,
    )
    spectrum = compute_spectrum(
        args, config, code, args.variety, use_cache=not args.no_cache
    )
    manifest.parameters["seed"] = spectrum.seed

    directory = result_directory(
        get_results_root(args, config), "spectrum", args.variety, args.q, args.h
    )
    write_csv(directory / "data.csv", ["weight", "multiplicity"], spectrum.rows())
    manifest.add_file(directory / "data.csv")

    print(
        "[{}, {}, {}] over GF({})".format(
            code.length, code.dimension, spectrum.min_distance, args.q
        )
    )
    print("first weights: {}".format(", ".join(map(str, spectrum.first_weights(5)))))

    if args.h == 2 and variety.n == 4:
        report = verify_weight_theorems(
            code, spectrum, threads=get_threads(args, config), bar=get_bar(args, config)
        )
        write_json(directory / "report.json", report.as_dict())
        manifest.add_file(directory / "report.json")
        print("verification: {}".format(report.status))

    manifest.write(directory)


def scan_command(args, config):
    """Write the histogram of the intersections of a variety with forms."""
    field = field_from_order(args.q)
    variety = make_preset(args.variety, field)
    quadric_scan = variety.kind == "quadric" and variety.n == 4 and args.h == 2
    threshold = leep_schueller_bound(variety.n, args.q) if quadric_scan else None
    manifest = RunManifest(
        "scan-max",
        {"variety": args.variety, "q": args.q, "h": args.h, "samples": args.samples},
        field_manifest(field),
        preset=args.variety,
        mode=args.mode,
    )

    with handle_scan_cap_error():
        scan = max_intersection_scan(
            variety,
            h=args.h,
            mode=args.mode,
            samples=args.samples,
            seed=config.get("seed", 0),
            threads=get_threads(args, config),
            chunk_size=config.get("chunk_size", 65536),
            argmax_cap=config.get("argmax_cap", 10000),
            threshold=threshold,
            bar=get_bar(args, config),
        )

    report = scan.as_dict()
    if variety.n == 4 and args.h == 2:
        checks = check_scan_bounds(scan, classify(variety))
        report["checks"] = [check.as_dict() for check in checks]

    if quadric_scan:
        report["pair_order"] = leep_schueller_check(scan, variety).as_dict()

    directory = result_directory(
        get_results_root(args, config), "scan-max", args.variety, args.q, args.h
    )
    manifest.parameters["seed"] = scan.seed
    write_csv(directory / "data.csv", ["count", "forms"], scan.rows())
    write_csv(
        directory / "argmax.csv",
        ["coefficients"],
        [(",".join(map(str, vector)),) for vector in scan.argmax.tolist()],
    )
    write_json(directory / "report.json", report)
    for name in ("data.csv", "argmax.csv", "report.json"):
        manifest.add_file(directory / name)

    manifest.write(directory)
    print(
        "largest count {} over {} points, reached by {} forms".format(
            scan.max_count, scan.size, scan.argmax_total
        )
    )
    print("minimum distance {}".format(scan.size - (scan.max_count or 0)))


def conjectures_command(args, config):
    """Write the evidence gathered on a conjecture."""
    field = field_from_order(args.t**2)
    root = get_results_root(args, config)
    threads = get_threads(args, config)
    bar = get_bar(args, config)

    def start(name):
        return RunManifest(
            "conjectures",
            {"which": args.which, "t": args.t, "name": name},
            field_manifest(field),
            mode="exhaustive",
        )

    reports = []
    if args.which == 1:
        manifest = start("conjecture1")
        report = conjecture_one(
            make_preset("hermitian4", field),
            degrees=tuple(args.degrees),
            threads=threads,
            chunk_size=config.get("chunk_size", 65536),
            argmax_cap=config.get("argmax_cap", 10000),
            bar=bar,
        )
        manifest.finish()
        reports.append(("conjecture1", manifest, report))

    else:
        for dimension in args.dimensions:
            name = "conjecture2-N{}".format(dimension)
            manifest = start(name)
            preset = "hermitian{}".format(dimension)
            code = build_code(make_preset(preset, field), 2)
            spectrum = compute_spectrum(args, config, code, preset)
            report = conjecture_two(code, spectrum, threads=threads, bar=bar)
            manifest.finish()
            reports.append((name, manifest, report))

    for name, manifest, report in reports:
        directory = result_directory(root, "conjectures", name, field.q)
        write_json(directory / "report.json", report.as_dict())
        manifest.add_file(directory / "report.json")
        manifest.write(directory)
        print("{}: {}".format(name, report.status))
        for check in report.checks:
            print("  {}: {}".format(check.name, "yes" if check.passed else "no"))


def construct_command(args, config):
    """Write the hermitian pair configurations and their weights."""
    field = field_from_order(args.t**2)
    manifest = RunManifest(
        "construct", {"t": args.t}, field_manifest(field), preset="hermitian4"
    )
    variety = make_preset("hermitian4", field)
    pairs = construct_pair_configurations(variety)

    directory = result_directory(
        get_results_root(args, config), "construct", "hermitian4", field.q, 2
    )
    write_csv(
        directory / "data.csv",
        ["configuration", "expected_weight", "weight", "passed"],
        [
            (pair.name, pair.expected_weight, pair.weight, pair.passed)
            for pair in pairs
        ],
    )
    write_json(
        directory / "report.json",
        {
            "length": variety_points(variety).cardinality,
            "weights": hermitian_code_weights(args.t),
            "pairs": [pair.as_dict() for pair in pairs],
        },
    )
    manifest.add_file(directory / "data.csv")
    manifest.add_file(directory / "report.json")
    manifest.write(directory)
    for pair in pairs:
        print(
            "{}: weight {}, formula {}".format(
                pair.name, pair.weight, pair.expected_weight
            )
        )


def create_config_command(args, config):
    create_config_file(CONFIG_RESOURCE, CONFIG_FILE, force=args.force)


def main(argv=None):
    """Run the command line front end.

    Args:
        argv (list of str): Arguments, the ones of the process if not given.
    """
    parser = get_parser()
    args = parser.parse_args(argv)

    create_logger(wrap=True)

    with handle_all_exceptions(
        bugtracker_url=BUGTRACKER_URL, logger=logger, debug=args.debug
    ) as exit_value:
        config = load_config(args.config, args.debug)
        set_loglevel(config)
        args.function(args, config)

    sys.exit(exit_value.value)
