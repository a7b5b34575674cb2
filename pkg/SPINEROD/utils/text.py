from typing import Any, List, Sequence

def list_to_and_separated(items : List[Any]) -> str:
    if len(items) == 0:
        return ""
    if len(items) == 1:
        return str(items[0])
    return ", ".join(str(item) for item in items[:-1]) + " and " + str(items[-1])

def format_vector(values : Sequence[float]) -> str:
    """
    Joins a vector's components with commas, losslessly. This is the form
    vectors take in scenario files, so the parser can read it back.
    """
    return ", ".join(repr(float(v)) for v in values)

def format_table(rows : Sequence[Sequence[Any]], header : Sequence[str]) -> str:
    """
    Renders rows as a plain fixed-width table for the terminal.
    """
    cells = [[str(h) for h in header]]
    for row in rows:
        cells.append([f"{v:.6g}" if isinstance(v, float) else str(v) for v in row])
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)
