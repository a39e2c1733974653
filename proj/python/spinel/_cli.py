"""Launches the bundled spinel executable."""

import os
import sys


def main():
    exe = os.path.join(os.path.dirname(__file__), "bin", "spinel")
    if not os.path.exists(exe):
        sys.exit("spinel: bundled executable not found at " + exe)
    os.execv(exe, [exe] + sys.argv[1:])
