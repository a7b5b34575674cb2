"""
Outcomes that commands hand back to the CLI dispatcher. Each one knows how
to report itself and which exit status the process should end with.
"""

import sys

class Outcome():
    exit_code = 0

    def report(self) -> int:
        return self.exit_code

class Status(Outcome):
    def __init__(self, exit_code : int):
        self.exit_code = exit_code

class Message(Outcome):
    def __init__(self, contents : str, exit_code : int = 0, error : bool = False):
        self.contents = contents
        self.exit_code = exit_code
        self.error = error

    def report(self) -> int:
        print(self.contents, file=sys.stderr if self.error else sys.stdout)
        return self.exit_code

OKAY = Status(0)
UNCONVERGED = Status(1)
FAILED = Status(2)

def to_outcome(converged : bool) -> Status:
    return OKAY if converged else UNCONVERGED
