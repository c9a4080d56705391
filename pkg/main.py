"""patsforge command-line entry point.

```zsh
python3 -m pip install -r requirements.txt
python3 main.py verify lb3
```
"""

from __future__ import annotations

from patsforge.cli import main


if __name__ == "__main__":
    raise SystemExit(main())
