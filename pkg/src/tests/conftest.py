# puts src/ on the import path so tests run from any checkout location
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1]))
