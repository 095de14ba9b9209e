"""Speech-biomarker and affect feature fusion with a semi-supervised GAN regressor."""

__version__ = "0.1.0"
