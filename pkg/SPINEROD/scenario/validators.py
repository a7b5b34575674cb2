"""
Small callable cleaners for scenario values. Each takes the raw text (or a
partly cleaned value) and returns the cleaned value, or None to reject it.
"""

import math
from typing import Container, Type, Any, Optional


class Validator:
    def __call__(self, val: Optional[Any]) -> Optional[Any]:
        raise NotImplementedError


class TypeValidator(Validator):
    def __init__(self, type_: Type):
        self.type = type_

    def __call__(self, val: Optional[Any]) -> Optional[Any]:
        if val is None:
            return None
        try:
            return self.type(val)
        except (TypeError, ValueError):
            return None


class RangeValidator(Validator):
    """
    Accepts min <= val <= max. Non-finite values never pass.
    """
    def __init__(self, min_: float = -math.inf, max_: float = math.inf, open_min: bool = False):
        self.min = min_
        self.max = max_
        self.open_min = open_min

    def __call__(self, val: Optional[Any]) -> Optional[Any]:
        if val is None or not math.isfinite(val):
            return None
        if val < self.min or (self.open_min and val == self.min) or val > self.max:
            return None
        return val


class InValidator(Validator):
    def __init__(self, valid: Container):
        self.valid = valid

    def __call__(self, val: Optional[Any]) -> Optional[Any]:
        return val if val is not None and val in self.valid else None


class BothValidator(Validator):
    def __init__(self, inner: Validator, outer: Validator):
        self.inner = inner
        self.outer = outer

    def __call__(self, val: Optional[Any]) -> Optional[Any]:
        return self.outer(self.inner(val))


class BoolValidator(Validator):
    TRUE = ("on", "true", "yes", "1")
    FALSE = ("off", "false", "no", "0")

    def __call__(self, val: Optional[Any]) -> Optional[Any]:
        if val is None:
            return None
        text = str(val).strip().lower()
        if text in self.TRUE:
            return True
        if text in self.FALSE:
            return False
        return None


class ListValidator(Validator):
    """
    Splits on a separator and cleans every item; optionally fixes the count.
    """
    def __init__(self, item: Validator, count: Optional[int] = None, sep: str = ","):
        self.item = item
        self.count = count
        self.sep = sep

    def __call__(self, val: Optional[Any]) -> Optional[Any]:
        if val is None:
            return None
        parts = [part.strip() for part in str(val).split(self.sep)]
        if self.count is not None and len(parts) != self.count:
            return None
        cleaned = tuple(self.item(part) for part in parts)
        if any(c is None for c in cleaned):
            return None
        return cleaned


class VectorValidator(ListValidator):
    def __init__(self):
        super().__init__(BothValidator(TypeValidator(float), RangeValidator()), 3)


class TableValidator(Validator):
    """
    Comma-separated "length:value" pairs.
    """
    def __init__(self):
        self.number = BothValidator(TypeValidator(float), RangeValidator())

    def __call__(self, val: Optional[Any]) -> Optional[Any]:
        if val is None:
            return None
        rows = []
        for pair in str(val).split(","):
            halves = pair.split(":")
            if len(halves) != 2:
                return None
            length, value = self.number(halves[0].strip()), self.number(halves[1].strip())
            if length is None or value is None:
                return None
            rows.append((length, value))
        return tuple(rows)
