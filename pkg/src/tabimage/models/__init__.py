"""Models trained on the generated image datasets."""
