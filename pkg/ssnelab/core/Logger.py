"""
-------------------------------------------------
SSNELab - Logger for console progress and the run log
-------------------------------------------------
"""

from enum import Enum
from typing import Dict, List, Optional, Union
import os, time


def format_seconds(seconds: float) -> str:
    m, s = divmod(int(seconds), 60)
    h, m = divmod(m, 60)

    if h > 0:
        return "%d:%02d:%02d" % (h, m, s)
    else:
        return "%d:%02d" % (m, s)


class LogLevel(str, Enum):
    NOTICE = 'NOTICE'
    WARNING = 'WARNING'
    ERROR = 'ERROR'
    DEBUG = 'DEBUG'
    RESULT = 'RESULT'

    # print level
    def __str__(self):
        return self.name


class LabLog:
    """
    Keeps the workflow timeline on the console and caches log messages per step.
    The cache is written to <out>/ssnelab.log by `export()`.
    """

    LOG_FILE = 'ssnelab.log'

    def __init__(self, config: 'Config') -> None:
        self.showProgress: bool = True
        self.printMessages: bool = False
        self.quiet: bool = False
        self.config: 'Config' = config
        self.started: bool = False

        self.steps: List[str] = []
        self.module: Optional[str] = None
        self.progress: int = 0

        # collecting timing information
        self.timing: Dict[str, Dict[str, Optional[float]]] = {}

        self.cache: List[str] = []

    def registerModule(self, module: str) -> None:
        assert not self.started, "Cannot register modules after starting."
        self.steps.append(module)

    def start(self) -> None:
        self.updateProgress()
        self.started = True

    def startModule(self, module: str) -> None:
        assert self.started, "Cannot start module before starting the logger."
        assert module in self.steps, "Cannot start module that is not registered."
        assert self.module is None, "Cannot start module if another module is already started."

        self.module = module
        self.timing[module] = {"start": time.time(), "stop": None}
        self.updateProgress()

    def finishModule(self, module: str) -> None:
        assert self.started, "Cannot finish module before starting the logger."
        assert self.module == module, "Cannot finish module that is not the current module."

        self.module = None
        self.progress += 1
        self.timing[module]["stop"] = time.time()
        self.updateProgress()

    def updateProgress(self) -> None:
        """Redraw the workflow timeline on the console."""
        if not self.showProgress or self.quiet or self.printMessages:
            return

        MODULE_NAME_LEN = 27

        # clean console
        if self.started:
            for _ in range(len(self.steps)):
                print("\x1b[1A\x1b[2K", end="")

        for i, module in enumerate(self.steps):
            # current step in blue, all others in gray
            print("\x1b[36m" if i == self.progress else "\x1b[90m", end="")
            print(str(i+1) + ". " + module, end="")
            print("\x1b[0m", end="")
            print(" " * (MODULE_NAME_LEN - len(module)), end="")

            timing = self.timing.get(module)
            if timing is not None and timing["stop"] is not None:
                print(f"({format_seconds(timing['stop'] - timing['start'])})", end="")
            print()

    def log(self, *args, level: Union[str, LogLevel] = LogLevel.NOTICE) -> None:
        """
        Cache a message as `[LEVEL|timestamp] (step): message`.

        With `printMessages` (--print) messages go straight to the console instead;
        with `quiet` (--quiet) notices and debug messages are dropped from the console.
        """
        if isinstance(level, str):
            level = LogLevel(level)

        timestamp = time.strftime("%d.%m.%y %H:%M:%S", time.localtime(time.time()))
        msg = " ".join([str(arg) for arg in args])
        step = f" ({self.module})" if self.module else ""
        line = f"[{str(level)}|{timestamp}]{step}: {msg}"
        self.cache.append(line)

        if self.printMessages and not (self.quiet and level in (LogLevel.NOTICE, LogLevel.DEBUG)):
            print(line)

    def export(self, out_dir: Optional[str] = None) -> Optional[str]:
        out_dir = out_dir if out_dir is not None else self.config.out_dir
        if not self.cache:
            return None
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, self.LOG_FILE)
        with open(path, 'w') as f:
            for msg in self.cache:
                f.write(msg + "\n")
        return path


from .Config import Config
