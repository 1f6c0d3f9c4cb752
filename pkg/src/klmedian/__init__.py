"""(k, l)-median clustering of time series under the discrete Frechet distance."""
