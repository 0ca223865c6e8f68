import os
import sys
from pathlib import Path

# Settings are read at import time; keep test runs quiet and out of the repo's results/
os.environ.setdefault("LOG_LEVEL", "WARNING")
os.environ.setdefault("OUTPUT_DIR", os.path.join(os.path.dirname(__file__), ".results"))

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))
