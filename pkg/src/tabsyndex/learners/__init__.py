from .encoding import TableEncoder
from .logistic import LogisticRegressionGD, binary_loss_and_grad, softmax_loss_and_grad
from .mlp import MLPClassifierGD, MLPRegressorGD, mlp_loss_and_grad
from .zoo import CLASSIFIERS, REGRESSORS, evaluate, fit_learner, macro_f1, make_learner, rmse

__all__ = [
    "CLASSIFIERS",
    "REGRESSORS",
    "LogisticRegressionGD",
    "MLPClassifierGD",
    "MLPRegressorGD",
    "TableEncoder",
    "binary_loss_and_grad",
    "evaluate",
    "fit_learner",
    "macro_f1",
    "make_learner",
    "mlp_loss_and_grad",
    "rmse",
    "softmax_loss_and_grad",
]
