from SPINEROD.cli import run_cli
