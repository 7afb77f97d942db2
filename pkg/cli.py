import click
import os

from dotenv import load_dotenv

from commands.cube import cube
from commands.frame import frame
from commands.lattice import lattice
from commands.poset import poset
from commands.render import render
from commands.space import space
from commands.tower import tower
from commands.verify import verify

load_dotenv(dotenv_path=os.path.join(os.path.dirname(os.path.abspath(__file__)), '.env'))

CONTEXT_SETTINGS = dict(help_option_names=['--help', '-h'])

@click.group(name='patchwork', context_settings=CONTEXT_SETTINGS)
def cli():
    """Exact computations on finite and pro-finite stably compact spaces."""
    pass

cli.add_command(poset)
cli.add_command(lattice)
cli.add_command(frame)
cli.add_command(space)
cli.add_command(tower)
cli.add_command(cube)
cli.add_command(verify)
cli.add_command(render)

if __name__ == '__main__':
    cli()
