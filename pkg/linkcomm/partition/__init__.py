# coding: utf-8
from .types import *
from .functions import *
from .api import *
