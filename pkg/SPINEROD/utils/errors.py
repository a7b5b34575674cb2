from typing import Any, Dict, Optional

class SpineRodError(RuntimeError):
    """
    Base class for everything the solver library raises on purpose.
    """
    def __init__(self, message : str):
        self.message = message
        super().__init__(self.message)

    def __str__(self):
        return self.message

class InvalidParameterError(SpineRodError):
    def __init__(self, name : str, value : Any, message=None):
        self.name = name
        self.value = value
        if message is None:
            message = f"Invalid value for {name}: {value}."
        super().__init__(message)

class DomainError(SpineRodError):
    def __init__(self, name : str, value : float, low : float, high : float, message=None):
        self.name = name
        self.value = value
        if message is None:
            message = f"{name} = {value} is outside [{low}, {high}]."
        super().__init__(message)

class OutOfEnvelopeError(SpineRodError):
    def __init__(self, length : float, limit : float, message=None):
        self.length = length
        if message is None:
            message = f"Spine length {length} m is outside the tested envelope [0, {limit}] m."
        super().__init__(message)

class RigidBodyError(SpineRodError):
    def __init__(self, message=None):
        if message is None:
            message = "Zero deflection means an infinitely stiff beam; no modulus can be identified."
        super().__init__(message)

class SingularStiffnessError(SpineRodError):
    def __init__(self, which : str, message=None):
        self.which = which
        if message is None:
            message = f"Stiffness matrix {which} has a zero diagonal entry."
        super().__init__(message)

class InvalidCommandError(SpineRodError):
    def __init__(self, message : str):
        super().__init__(message)

class DivergenceError(SpineRodError):
    def __init__(self, index : int, message=None):
        self.index = index
        if message is None:
            message = f"Rod state became non-finite at grid index {index}."
        super().__init__(message)

class SolverFailureError(SpineRodError):
    def __init__(self, diagnostics : Dict[str, Any], best=None, message=None):
        self.diagnostics = diagnostics
        # The best iterate seen before failing, if any (a SolveResult).
        self.best = best
        if message is None:
            message = f"Shooting solver failed: {diagnostics}"
        super().__init__(message)

class ScenarioParseError(SpineRodError):
    def __init__(self, key : Optional[str], line : Optional[int], reason : str):
        self.key = key
        self.line = line
        self.reason = reason
        where = f"line {line}" if line is not None else "scenario"
        if key is not None:
            where += f" ({key})"
        super().__init__(f"{where}: {reason}")
