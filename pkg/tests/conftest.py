import sys
from pathlib import Path

# let test modules import the local reference oracles
sys.path.insert(0, str(Path(__file__).parent))
