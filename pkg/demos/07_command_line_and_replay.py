"""The ``shpattern`` command line, and replaying a run from its manifest.

Equivalent shell session::

    shpattern simulate-gl --out demo_out/cli_gl --snapshots 0,0.01 --seed 4
    shpattern simulate-gl --config demo_out/cli_gl/manifest.txt --out demo_out/cli_gl_again
"""

import os

from shpattern.harness.cli import main
from shpattern.harness.experiments import read_manifest_files, replay

out = os.path.join("demo_out", "cli_gl")
rc = main(["simulate-gl", "--out", out, "--snapshots", "0,0.01", "--seed", "4"])
print("exit code", rc)
manifest = os.path.join(out, "manifest.txt")
print(open(manifest).read().splitlines()[:6])
print(len(read_manifest_files(manifest)), "files with checksums")

# A manifest is also a config file, so the run can be repeated exactly.
print("replay mismatches:", replay(manifest, os.path.join("demo_out", "cli_gl_again")))

# Errors map to exit codes: 2 for config, 3 for blow-up, 4 for clock or grid mismatch.
print("off-lattice snapshot ->", main(["simulate-gl", "--out", os.path.join("demo_out", "bad"), "--snapshots", "0.00015"]))
