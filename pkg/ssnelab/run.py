"""
-------------------------------------------------
SSNELab - Experiment runner (entrypoint).
python3 -m ssnelab.run run --config configs/disjoint_balls.json

    run                             : build operators, falsify claims, compute and iterate
                                      rates, construct witnesses, write the report
    print-rates                     : tabulate the configured rates only (no sampling,
                                      no iteration)

    --config PATH                   : the experiment configuration file
    --seed U64                      : overrides general.seed
    --samples N                     : overrides general.trials
    --out DIR                       : overrides general.out ($SSNELAB_OUT_DIR by default)
    --set key.path=value            : dotted override of any config value (repeatable)
    --quiet                         : no progress timeline, no summary
    --print                         : print log messages instead of the progress timeline
    --stop-on-error                 : abort at the first failing workflow step

Exit codes: 0 all claims, rates and witnesses as expected; 1 otherwise;
2 configuration or file system error.
-------------------------------------------------
"""

from typing import Dict, List, Optional, Sequence, Tuple, Type, Union
import argparse, sys, importlib
from ssnelab.core import Config, Module, ConfigError
from ssnelab.core.Logger import LabLog, LogLevel
from ssnelab.utils.printing import f, print_summary

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

# define import paths
import_paths = {
    'OperatorBuilder': 'ssnelab.modules.builder.OperatorBuilder',
    'ClaimVerifier': 'ssnelab.modules.verifier.ClaimVerifier',
    'RateCalculator': 'ssnelab.modules.calculator.RateCalculator',
    'RegularityChecker': 'ssnelab.modules.calculator.RegularityChecker',
    'WitnessBuilder': 'ssnelab.modules.witness.WitnessBuilder',
    'ReportExporter': 'ssnelab.modules.exporter.ReportExporter',
}

# print-rates chain: no sampling, no iteration
PRINT_RATES_CHAIN: List[Union[str, Dict]] = [
    'OperatorBuilder',
    'RateCalculator',
    {'module': 'ReportExporter', 'rates_only': True},
]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='ssnelab', description='SSNELab experiment runner')
    commands = parser.add_subparsers(dest='command', required=True)

    for name, help in (('run', 'Run the workflow configured in the experiment file.'),
                       ('print-rates', 'Tabulate the configured rates into rate_table.csv.')):
        p = commands.add_parser(name, help=help)
        p.add_argument('--config', type=str, required=True, help='The experiment configuration file (JSON or YAML).')
        p.add_argument('--seed', type=int, help='Seed of the falsification sweeps; overrides general.seed.')
        p.add_argument('--samples', type=int, help='Number of sampled trials per claim; overrides general.trials.')
        p.add_argument('--out', type=str, help='Output directory; overrides general.out.')
        p.add_argument('--set', action='append', default=[], metavar='KEY=VALUE', help='Override a config value, e.g. general.n_max=500.')
        p.add_argument('--quiet', action='store_true', help='Hide the progress timeline, notices and the summary.')
        p.add_argument('--print', action='store_true', help='Print log messages to stdout instead of showing a progress timeline.')
        p.add_argument('--stop-on-error', action='store_true', help='Stop execution when a workflow step raises.')

    return parser


def get_workflow(execute_chain: Sequence[Union[str, Dict]]) -> List[Tuple[str, Dict]]:
    workflow = []
    for module in execute_chain:
        module_name = module if isinstance(module, str) else module['module']
        module_args = {k: v for k, v in module.items() if k != 'module'} if isinstance(module, dict) else {}
        workflow.append((module_name, module_args))
    return workflow


def error(message: str) -> None:
    print(f'{f.cyellow+f.fbold}Error:{f.fnormal+f.cyellow} {message}{f.cend}', file=sys.stderr)


def run(args: argparse.Namespace, execute_chain: Optional[Sequence[Union[str, Dict]]] = None) -> int:

    # instantiate config
    try:
        config = Config(config_file=args.config, overrides=args.set, seed=args.seed, samples=args.samples, out=args.out)
    except ConfigError as e:
        error(str(e))
        return EXIT_CONFIG

    # parse the module list
    workflow = get_workflow(execute_chain if execute_chain is not None else config.execute)

    # sanity check
    unknown = [m for (m, _) in workflow if m not in import_paths]
    if unknown:
        error(f"Unknown workflow steps: {', '.join(unknown)}.")
        return EXIT_CONFIG

    # prepare the logger
    logger = LabLog(config)
    logger.printMessages = args.print
    logger.quiet = args.quiet
    config.useLogger(logger)

    for (m, _) in workflow:
        logger.registerModule(m)
    logger.start()

    # sequential execution
    status = EXIT_OK
    for class_name, module_config in workflow:
        mimport = importlib.import_module(import_paths[class_name])
        module: Type[Module] = getattr(mimport, class_name)

        try:
            module(config=config, local_config=module_config).execute()
        except (ConfigError, OSError) as e:
            logger.log(f"{class_name}: {e}", level=LogLevel.ERROR)
            error(f"{class_name}: {e}")
            status = EXIT_CONFIG
            break
        except Exception as e:
            logger.log(f"{class_name}: {type(e).__name__}: {e}", level=LogLevel.ERROR)
            config.data.addFailure(class_name, f"{type(e).__name__}: {e}")
            if args.stop_on_error:
                error(f"{class_name}: {type(e).__name__}: {e}")
                break

    # export the run log
    try:
        logger.export()
    except OSError as e:
        error(f"Cannot write the log: {e}")
        return EXIT_CONFIG

    if status != EXIT_OK:
        return status

    if not args.quiet:
        print_summary(config.data)

    return EXIT_OK if config.data.passed else EXIT_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return run(args, PRINT_RATES_CHAIN if args.command == 'print-rates' else None)


if __name__ == '__main__':
    sys.exit(main())
