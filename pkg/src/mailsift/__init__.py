"""mailsift: spam/phishing email classification end to end.

Corpus ingestion and harmonization, tokenization, TF-IDF and skip-gram
embedding features, from-scratch linear SVM / Multinomial Naive Bayes /
random forest classifiers, an evaluation harness, perturbation-based
local explanations, versioned pipeline artifacts, and a JSON HTTP
inference service.
"""

from .artifact import FORMAT_VERSION, PipelineArtifact, load_artifact, save_artifact
from .classifiers import (
    ClassifierModel,
    MnbModel,
    Prediction,
    RfHyperparams,
    RfModel,
    SvmHyperparams,
    SvmModel,
    predict,
    token_scorer,
    train_mnb,
    train_rf,
    train_svm,
)
from .corpus import (
    Corpus,
    CorpusRecord,
    CorpusSchema,
    EmailRecord,
    LoadedDataset,
    ManifestEntry,
    combine_text,
    load_dataset,
    load_manifest,
    merge_corpora,
    read_manifest,
)
from .evaluation import ConfusionMatrix, Metrics, ReportRow, confusion, metrics, split
from .explain import (
    Explanation,
    ExplainConfig,
    TokenWeight,
    explain,
    explain_tokens,
    perturb_samples,
)
from .pipeline import TrainedPipeline, TrainOptions, reevaluate, train_and_evaluate
from .textprep import PrepConfig, TokenSequence, load_stopwords, preprocess
from .vectorize import (
    SparseVector,
    TfIdfModel,
    fit_tfidf,
    transform_counts,
    transform_tfidf,
    transform_tfidf_many,
)
from .word2vec import (
    EmbeddingTable,
    W2VParams,
    embed_document,
    pair_loss_and_grads,
    train_word2vec,
)

__version__ = "0.1.0"
