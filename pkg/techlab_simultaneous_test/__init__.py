import ast
from pathlib import Path

MANIFEST = ast.literal_eval(Path(__file__).with_name('__manifest__.py').read_text(encoding='utf-8'))
__version__ = MANIFEST['version']

from . import exceptions
from . import models
