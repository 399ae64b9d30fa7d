from .config import CONFIG, CONFIG_PATH
from .__version__ import __version__
