"""promptloop: prompt-guided image-to-image ablation toolkit."""
