"""Module entry point: python -m heckerpf."""

from .cli import main

raise SystemExit(main())
