import click
import functools
import jinja2
import json
import logging
import os

from jsonschema import Draft202012Validator

from commands.utils import codec
from commands.utils import poset as po
from commands.utils.errors import Error, InputError, InternalConsistencyError


ENVVAR_PREFIX = 'PATCHWORK'
DEFAULT_SEED = 0x5EED
DEFAULT_MAX_SIZE = 5
DEFAULT_DEPTH = 3

TEMPLATE_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'templates')
REPORT_SCHEMA = os.path.join(TEMPLATE_DIR, 'report.schema.json')

EXIT_FAILED = 1
EXIT_BAD_INPUT = 2

def prefix_envvar(str):
    return ENVVAR_PREFIX + '_' + str

def configure_logging(verbose, debug):
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s', force=True)
    if debug:
        click.echo('>>> Debug mode: enabled', err=True)

def common_params(func):
    @click.option('--json', 'as_json',
                  help='Print machine-readable JSON',
                  is_flag=True)
    @click.option('--verbose', '-v',
                  help='Show progress for each case',
                  is_flag=True)
    @click.option('--debug', '-d',
                  is_flag=True,
                  help='Show full debug output',
                  default=False)
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        configure_logging(kwargs.pop('verbose'), kwargs.pop('debug'))
        try:
            return func(*args, **kwargs)
        except InputError as e:
            report_error(e)
            click.get_current_context().exit(EXIT_BAD_INPUT)
        except Error as e:
            report_error(e)
            click.get_current_context().exit(EXIT_FAILED)
    return wrapper

def seed_option(func):
    return click.option('--seed',
                        envvar=prefix_envvar('SEED'),
                        type=click.IntRange(0, 2 ** 64 - 1),
                        default=DEFAULT_SEED,
                        show_default=True,
                        help='Seed for randomized cases',
                        metavar='<int>')(func)

def max_size_option(func):
    return click.option('--max-size',
                        envvar=prefix_envvar('MAX_SIZE'),
                        type=click.IntRange(0, 6),
                        default=DEFAULT_MAX_SIZE,
                        show_default=True,
                        help='Largest poset size to sweep',
                        metavar='<int>')(func)

def depth_option(func):
    return click.option('--depth',
                        envvar=prefix_envvar('DEPTH'),
                        type=click.IntRange(0, 8),
                        default=DEFAULT_DEPTH,
                        show_default=True,
                        help='Tower depth to compute at',
                        metavar='<int>')(func)

def upset_opens_option(func):
    return click.option('--upset-opens',
                        is_flag=True,
                        help='Read the input with upward closed opens')(func)

def report_error(e):
    if isinstance(e, InputError):
        click.echo('Error: ' + e.diagnostic(), err=True)
    else:
        click.echo('Error: {}'.format(e), err=True)

def echo_config(dict, fields):
    for k, v in dict.items():
        if k in fields:
            click.echo('{}: {}'.format(k, v))

def echo_json(obj):
    click.echo(codec.dumps(obj))

def load_poset(path, upset_opens=False):
    """Internally opens are downsets; upset input is flipped at the boundary."""
    P = codec.load(path, codec.read_poset)
    return po.opposite(P) if upset_opens else P

def schema_errors(report):
    with open(REPORT_SCHEMA, encoding='utf-8') as f:
        validator = Draft202012Validator(json.load(f))
    return ['{}: {}'.format(list(e.absolute_path), e.message)
            for e in sorted(validator.iter_errors(report), key=str)]

def emit_report(report, as_json):
    """Print a verification report and exit 1 with the first counterexample if it failed."""
    problems = schema_errors(report)
    if problems:
        raise InternalConsistencyError('Report does not match its schema: ' + problems[0])
    if as_json:
        echo_json(report)
    else:
        click.echo(render_report(report), nl=False)
    if not report['passed']:
        first = report['failures'][0]
        click.echo('First counterexample: {}: {}'.format(first['case'], first['detail']), err=True)
        click.get_current_context().exit(EXIT_FAILED)

def render_report(report):
    env = jinja2.Environment(loader=jinja2.FileSystemLoader(TEMPLATE_DIR), trim_blocks=True,
                             keep_trailing_newline=True)
    return env.get_template('report.txt.j2').render(report=report)

