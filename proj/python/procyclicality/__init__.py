"""Rolling quantile risk analytics: weighted sample-quantile processes,
look-forward risk ratios conditioned on realized volatility, and GARCH(1,1)
calibration and Monte Carlo experiments."""

try:
    from ._procyclicality import *  # noqa: F401,F403
    from ._procyclicality import __version__  # noqa: F401
except ImportError:  # build-tree layout: extension next to the package
    from _procyclicality import *  # noqa: F401,F403
    from _procyclicality import __version__  # noqa: F401
