from django.apps import AppConfig


class BayesFactorConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'bayes_factor'
    verbose_name = 'Bayes factor toolkit'
