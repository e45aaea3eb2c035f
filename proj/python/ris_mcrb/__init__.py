# SPDX-License-Identifier: Apache-2.0
"""Mutual-coupling impact on RIS-assisted channel estimation.

Thin-wire impedances, the impedance-based end-to-end channel, and the
mismatched / matched estimation bounds, implemented in C++.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
