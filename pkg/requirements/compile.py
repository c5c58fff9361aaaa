#!/usr/bin/env python
import os
import subprocess
import sys
from pathlib import Path

DJANGO_PINS = {
    "django42": "Django>=4.2,<5",
    "django50": "Django>=5.0,<5.1",
    "django51": "Django>=5.1,<5.2",
}

if __name__ == "__main__":
    py_version = sys.version_info[:2]

    os.chdir(Path(__file__).parent)
    os.environ["CUSTOM_COMPILE_COMMAND"] = "requirements/compile.py"
    os.environ["PIP_REQUIRE_VIRTUALENV"] = "0"
    common_args = [
        "-m",
        "piptools",
        "compile",
        "--generate-hashes",
        "--allow-unsafe",
        "requirements.in",
    ] + sys.argv[1:]

    if py_version < (3, 10):
        sys.exit("cerny_lab needs Python 3.10+")

    tag = f"py{py_version[0]}{py_version[1]}"
    for name, pin in DJANGO_PINS.items():
        subprocess.run(
            ["python", *common_args, "-P", pin, "-o", f"{tag}-{name}.txt"],
            check=True,
            capture_output=True,
        )

    # Use SED to remove the --extra-index-url lines from every file
    sed_args = ["sed", "-i", "-e", "s/--extra-index-url .*$//g"]
    [
        subprocess.run([*sed_args, x.name])
        for x in Path(".").iterdir()
        if not x.is_dir() and ".txt" in x.name
    ]
