from .Error import *
from .Provenance import Provenance
from .Config import Config
from .Workspace import Workspace
from .Module import Module
from .IO import IO
from .Logger import LabLog, LogLevel
