"""Visual knowledge-discovery workbench core.

Losslessly maps multidimensional datasets to 2-D polyline plots, extracts
interpretable hyperblocks from decision trees, compiles plot separators
into rule-series classifiers, and evaluates worst-case splits drawn from
regions of visual overlap.
"""

from .classifiers import (
    ClassifierSpec,
    DecisionTree,
    GaussianNaiveBayes,
    KNearestNeighbors,
)
from .data import Dataset, Sample, load_dataset, minmax_scale, unscale
from .evaluation import ExperimentReport, kfold_cv, run_experiment, worst_split_eval
from .geometry import (
    PlotConfig,
    PlotGeometry,
    hb_boundary_bands,
    map_dsc1,
    map_dsc2,
    map_ngon_dsc2,
    map_pc,
    map_plot,
    map_spc,
    nonlinear_scale,
    nonlinear_unscale,
    reconstruct,
)
from .hyperblocks import (
    Hyperblock,
    HyperblockSet,
    attribute_of_separation,
    extract_hyperblocks,
    order_attributes,
    primary_blocks,
    purity_table,
)
from .project import Project, load_project, save_project
from .render import RenderSpec, render_svg
from .rules import (
    RuleSeries,
    Separator,
    classify_series,
    compile_tree_to_series,
    format_rules,
    series_accuracy,
    truncate_series,
)
from .splits import SelectionBox, WorstSplit, box_select, build_worst_split

__version__ = "0.1.0"
