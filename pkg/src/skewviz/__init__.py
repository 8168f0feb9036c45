"""Robust summaries and synchronized plots for skewed univariate data."""
from .density import (BinRule, DensityCurve, Histogram, fd_bandwidth, histogram, kde,
                      kde_at, scott_bandwidth, select_bandwidth, sturges_bins)
from .demo import demo_sample
from .errors import (ColumnNotFound, DegenerateVariance, DomainError, EmptyFigure,
                     EmptySample, ParseError, SkewvizError)
from .geometry import (BoxStats, PanelGeometry, adjusted_box, axis_range,
                       bean_geom, box_percentile_geom, build_panels, classical_box,
                       letter_value_geom, mean_box_geom, notched_box, rug_geom,
                       violin_geom)
from .render import FigureLayout, emit_svg, layout, write_svg
from .stats import (LetterValueSet, Medcouple, SortedSample, SummaryStats,
                    letter_values, make_sample, medcouple, quantile, summary)

__version__ = "0.1.0"
