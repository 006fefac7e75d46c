"""Figure scripts that render pmesim CLI exports.

Two standalone commands: pmefigs-field (velocity-field quiver with magnitude
colormap and trajectory overlays) and pmefigs-monitor (trace-distance curve
panels).  Inputs are only the simulator CLI's documented CSV/JSON files.
"""

from .field import render_field_figure
from .io import SchemaError
from .monitor import render_monitor_figure

__all__ = ["render_field_figure", "render_monitor_figure", "SchemaError"]
__version__ = "0.1.0"
