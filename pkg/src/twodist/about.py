"""Function to display details about the twodist installation"""

import platform
import sys
from importlib.metadata import version as distribution_version
from subprocess import CalledProcessError, check_output

import numpy
import scipy
import semantic_version
import tqdm


def about() -> None:
    """Prints the information regarding twodist installation"""

    try:
        print(check_output([sys.executable, "-m", "pip", "show", "twodist"]).decode())
    except CalledProcessError:
        print("twodist is not installed through pip.\n")
    print(f"Platform info:            {platform.platform(aliased=True)}")
    print(
        f"Python version:           {sys.version_info[0]}.{sys.version_info[1]}.{sys.version_info[2]}"
    )
    print(f"Numpy version:            {numpy.__version__}")
    print(f"Scipy version:            {scipy.__version__}")
    print(f"tqdm version:             {tqdm.__version__}")
    print(f"semantic_version version: {semantic_version.__version__}")
    print(f"click version:            {distribution_version('click')}")
