"""Election analysis toolkit."""
