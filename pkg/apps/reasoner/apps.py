from django.apps import AppConfig


class ReasonerConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.reasoner'
    verbose_name = 'reasoner'
