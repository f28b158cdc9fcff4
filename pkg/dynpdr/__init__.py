"""
IC3/PDR safety model checker for AIGER circuits with adaptive generalization
"""
__VERSION__ = "0.9.0"
__version__ = __VERSION__
