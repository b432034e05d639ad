# 數值服務套件
