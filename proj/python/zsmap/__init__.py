"""Category-specific visual-semantic mapping for zero-shot learning."""

from ._zsmap import (
    AezslModel,
    AezslOptions,
    DaezslParams,
    DaezslTrainOptions,
    EszslModel,
    RefineOptions,
    RefineResult,
    SyntheticSpec,
    ZslDataset,
    argmax_rows,
    calibrated_stack,
    fit_aezsl,
    fit_aezsl_gzsl,
    fit_eszsl,
    flat_hit_at_k,
    generate_synthetic,
    load_dataset,
    multiclass_accuracy,
    predict_compatibility,
    predict_daezsl_all,
    refine_labels,
    save_dataset,
    select_gamma_ausuc,
    solve_special_sylvester,
    train_daezsl,
)

__all__ = [
    "AezslModel",
    "AezslOptions",
    "DaezslParams",
    "DaezslTrainOptions",
    "EszslModel",
    "RefineOptions",
    "RefineResult",
    "SyntheticSpec",
    "ZslDataset",
    "argmax_rows",
    "calibrated_stack",
    "fit_aezsl",
    "fit_aezsl_gzsl",
    "fit_eszsl",
    "flat_hit_at_k",
    "generate_synthetic",
    "load_dataset",
    "multiclass_accuracy",
    "predict_compatibility",
    "predict_daezsl_all",
    "refine_labels",
    "save_dataset",
    "select_gamma_ausuc",
    "solve_special_sylvester",
    "train_daezsl",
]
