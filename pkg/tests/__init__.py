"""
Double Poisson - Test Suite

Test Structure:
- unit/: Unit tests for individual modules
- integration/: Command line and acceptance tests
"""

from pathlib import Path
import sys

# Add the project root to the Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))
