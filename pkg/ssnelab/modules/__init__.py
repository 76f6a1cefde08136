from .builder import *
from .verifier import *
from .calculator import *
from .witness import *
from .exporter import *
