import SPINEROD

SPINEROD.run_cli()
