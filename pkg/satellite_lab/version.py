"""version"""
import importlib.metadata

VERSION = importlib.metadata.version("satellite-lab")
