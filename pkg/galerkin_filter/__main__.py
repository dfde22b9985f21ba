"""Run the galerkin-filter CLI with `python -m galerkin_filter`."""
from .cli import main

raise SystemExit(main())
