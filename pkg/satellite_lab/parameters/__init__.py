"""Parameter plane of the logistic family: multiplier maps and limbs."""
